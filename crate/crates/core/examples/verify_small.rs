//! Library usage demo: build one small group and run every verification
//! suite against it.
//!
//! Run with: cargo run --example verify_small

use supq_core::field::FieldSpec;
use supq_core::group::{GroupTable, DEFAULT_CAP};
use supq_core::roots::{Family, GroupKind};
use supq_core::verify;

fn main() {
    let fs = FieldSpec::new(3, 1, None).unwrap();
    let kind = GroupKind::new(Family::OddOrthogonal, 2).unwrap();
    let table = GroupTable::build_classical(kind, fs, DEFAULT_CAP).unwrap();
    println!(
        "{kind} over F_3: |U| = {}, {} conjugacy classes",
        table.size(),
        table.class_count()
    );

    let ambient_fs = FieldSpec::new(3, 1, None).unwrap();
    let ambient = GroupTable::build_ambient(kind.m(), ambient_fs, DEFAULT_CAP).unwrap();

    let reports = vec![
        verify::verify_orthogonality(&table),
        verify::verify_partition(&table),
        verify::verify_formula(&table),
        verify::verify_regular(&table),
        verify::verify_products(&table),
        verify::verify_remark(&table),
        verify::verify_maxdeg_check(&table),
        verify::verify_restriction(&table, &ambient),
    ];
    for r in reports {
        for line in r.lines.iter() {
            println!(
                "[{}] {} {}",
                r.check,
                if line.passed { "PASS" } else { "FAIL" },
                line.label
            );
        }
    }
}
