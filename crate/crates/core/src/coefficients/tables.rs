use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::Engine;
use crate::error::{Error, Result};
use crate::exactalg::RationalFunction;
use crate::families::Family;
use crate::partitions::{partitions_up_to, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    B,
    BInv,
    A,
    Lr,
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::B => "b",
            TableKind::BInv => "b_inv",
            TableKind::A => "a",
            TableKind::Lr => "lr",
        })
    }
}

impl FromStr for TableKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<TableKind> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "b" => Ok(TableKind::B),
            "b_inv" | "binv" => Ok(TableKind::BInv),
            "a" => Ok(TableKind::A),
            "lr" | "c" => Ok(TableKind::Lr),
            _ => Err(Error::Parse {
                what: "table kind",
                input: s.to_string(),
            }),
        }
    }
}

/// Nonzero coefficients keyed by `(λ, μ)` or `(λ, μ, ν)`, in graded order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientTable {
    pub family: Family,
    pub n: usize,
    pub kind: TableKind,
    pub entries: Vec<(Vec<Partition>, RationalFunction)>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    family: String,
    n: usize,
    kind: String,
    lambda: String,
    mu: String,
    nu: String,
    value: &'a RationalFunction,
}

impl CoefficientTable {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for (key, value) in &self.entries {
            let part = |i: usize| key.get(i).map(|p| p.to_string()).unwrap_or_default();
            w.serialize(CsvRow {
                family: self.family.to_string(),
                n: self.n,
                kind: self.kind.to_string(),
                lambda: part(0),
                mu: part(1),
                nu: part(2),
                value,
            })
            .map_err(|e| Error::Invalid(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))
    }
}

impl Engine {
    /// All nonzero entries of the requested kind over `𝒫_n^d`.
    pub fn table(&self, kind: TableKind, d: u32) -> Result<CoefficientTable> {
        let ps = partitions_up_to(self.cfg.n, d);
        let mut entries = Vec::new();
        for l in &ps {
            for mu in ps.iter().filter(|m| l.contains(m).unwrap_or(false)) {
                if kind == TableKind::Lr {
                    for nu in ps.iter().filter(|v| l.contains(v).unwrap_or(false)) {
                        if l.size() > mu.size() + nu.size() {
                            continue;
                        }
                        let v = self.lr_weighted(l, mu, nu)?;
                        if !v.is_zero() {
                            entries.push((vec![l.clone(), mu.clone(), nu.clone()], v));
                        }
                    }
                    continue;
                }
                let v = match kind {
                    TableKind::B => self.b_direct(l, mu)?,
                    TableKind::BInv => self.b_inverse(l, mu)?,
                    TableKind::A => self.a_entry(l, mu)?,
                    TableKind::Lr => unreachable!(),
                };
                if !v.is_zero() {
                    entries.push((vec![l.clone(), mu.clone()], v));
                }
            }
        }
        Ok(CoefficientTable {
            family: self.cfg.family,
            n: self.cfg.n,
            kind,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyConfig;

    #[test]
    fn csv_has_header_and_quoted_partitions() {
        let e = Engine::new(FamilyConfig::new(Family::AJ, 1).unwrap());
        let t = e.table(TableKind::B, 2).unwrap();
        let csv = t.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("family,n,kind,lambda,mu,nu,value"));
        assert!(csv.contains("AJ,1,b,[2],[1],,2"));
        assert_eq!(t.entries.len(), 6);
    }
}
