//! Parameter resolution: q = p^e factoring, soft caps, field and group
//! construction.

use supq_core::field::FieldSpec;
use supq_core::group::{GroupTable, Scope};
use supq_core::roots::{Family, GroupKind};

use crate::{Cli, GroupType};

pub struct RunConfig {
    pub kind: GroupKind,
    pub p: u32,
    pub e: u32,
    pub modulus: Option<Vec<u32>>,
    pub cap: u128,
    pub threads: usize,
}

fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut e = 0;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            return if rest == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<RunConfig, String> {
        let family = match cli.group_type {
            GroupType::Sp => Family::Symplectic,
            GroupType::OEven => Family::EvenOrthogonal,
            GroupType::OOdd => Family::OddOrthogonal,
        };
        let kind = GroupKind::new(family, cli.n).map_err(|e| format!("{e}"))?;
        let (p, e) = factor_prime_power(cli.q)
            .ok_or_else(|| format!("q = {} is not a prime power", cli.q))?;
        if p == 2 {
            return Err("q must be odd (p >= 3)".into());
        }
        if !cli.force {
            if cli.q > 17 {
                return Err(format!(
                    "q = {} exceeds the soft cap 17; pass --force to raise it",
                    cli.q
                ));
            }
            if e > 2 {
                return Err(format!(
                    "extension degree e = {e} exceeds the soft cap 2; pass --force to raise it"
                ));
            }
        }
        let threads = match cli.threads {
            Some(t) if t >= 1 => t,
            Some(_) => return Err("--threads must be at least 1".into()),
            None => std::env::var("SUPQ_THREADS")
                .ok()
                .and_then(|v| v.parse::<usize>().ok())
                .filter(|&t| t >= 1)
                .unwrap_or(1),
        };
        Ok(RunConfig {
            kind,
            p,
            e,
            modulus: cli.modulus.clone(),
            cap: cli.cap,
            threads,
        })
    }

    pub fn field(&self) -> Result<FieldSpec, String> {
        FieldSpec::new(self.p, self.e, self.modulus.as_deref()).map_err(|e| format!("{e}"))
    }

    pub fn build_group(&self) -> Result<GroupTable, String> {
        let fs = self.field()?;
        GroupTable::build(Scope::Classical(self.kind), fs, self.cap).map_err(|e| format!("{e}"))
    }

    pub fn build_ambient(&self, m: usize) -> Result<GroupTable, String> {
        let fs = self.field()?;
        GroupTable::build(Scope::Ambient { m }, fs, self.cap).map_err(|e| format!("{e}"))
    }
}
