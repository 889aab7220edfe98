//! The manifest of constructions run by `catalog`, and the verification of each row.

use std::path::Path;

use crate::construct::{build, Built, Summary};
use crate::options::Options;

/// One construction with the parameters it must reproduce.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub family: &'static str,
    pub params: &'static [(&'static str, &'static str)],
    pub expect: (u64, u64, u64, u64, u64),
    pub cite: &'static str,
}

impl CatalogEntry {
    pub fn label(&self) -> String {
        let mut s = self.family.to_string();
        for (k, v) in self.params {
            s.push_str(&format!(" {k}={v}"));
        }
        s
    }
}

macro_rules! entry {
    ($family:expr, [$($k:expr => $v:expr),*], $expect:expr, $cite:expr) => {
        CatalogEntry { family: $family, params: &[$(($k, $v)),*], expect: $expect, cite: $cite }
    };
}

/// Every construction in manifest order.
pub const MANIFEST: &[CatalogEntry] = &[
    entry!("point-hyperplane", ["n" => "3", "q" => "2"], (7, 7, 3, 3, 1), "projective plane"),
    entry!("point-hyperplane", ["n" => "3", "q" => "3"], (13, 13, 4, 4, 1), "projective plane"),
    entry!("point-hyperplane", ["n" => "3", "q" => "4"], (21, 21, 5, 5, 1), "projective plane"),
    entry!("point-hyperplane", ["n" => "4", "q" => "2"], (15, 15, 7, 7, 3), "projective space"),
    entry!("projective-points", ["n" => "3", "q" => "4"], (21, 105, 20, 4, 3), "punctured lines"),
    entry!("projective-points", ["n" => "4", "q" => "3"], (40, 520, 39, 3, 2), "punctured lines"),
    entry!("wbs", ["q" => "8"], (28, 63, 9, 4, 1), "Witt-Bose-Shrikhande space"),
    entry!("wbs", ["q" => "32"], (496, 1023, 33, 16, 1), "Witt-Bose-Shrikhande space"),
    entry!("hermitian-unital", ["q" => "2"], (9, 12, 4, 3, 1), "Hermitian unital"),
    entry!("hermitian-unital", ["q" => "3"], (28, 63, 9, 4, 1), "Hermitian unital"),
    entry!("hermitian-unital", ["q" => "4"], (65, 208, 16, 5, 1), "Hermitian unital"),
    entry!("unitary", ["q" => "3"], (28, 252, 27, 3, 2), "punctured unital blocks"),
    entry!("unitary", ["q" => "4"], (65, 1040, 64, 4, 3), "punctured unital blocks"),
    entry!("suzuki", ["q" => "8"], (65, 520, 64, 8, 7), "Suzuki-Tits ovoid"),
    entry!("suzuki", ["q" => "32"], (1025, 32800, 1024, 32, 31), "Suzuki-Tits ovoid"),
    entry!("affine-subspace", ["p" => "2", "d" => "8", "n" => "2", "u" => "3", "placement" => "line"], (256, 8160, 255, 8, 7), "affine subspaces"),
    entry!("affine-subspace", ["p" => "2", "d" => "10", "n" => "2", "u" => "3", "placement" => "line"], (1024, 130944, 1023, 8, 7), "affine subspaces"),
    entry!("coset-union", ["p" => "3", "d" => "4", "n" => "2", "u" => "0", "omega" => "4", "placement" => "line"], (81, 1620, 80, 4, 3), "coset unions"),
    entry!("paley", ["p" => "7", "d" => "1", "i" => "2", "theta" => "1", "y" => "1"], (7, 7, 3, 3, 1), "quadratic residues"),
    entry!("paley", ["p" => "11", "d" => "1", "i" => "2", "theta" => "1", "y" => "1"], (11, 11, 5, 5, 2), "quadratic residues"),
    entry!("recipe", ["name" => "psl2-5-on-6"], (6, 10, 5, 3, 2), "PSL(2,5) on PG(1,5)"),
    entry!("recipe", ["name" => "psl2-7-on-8"], (8, 14, 7, 4, 3), "PSL(2,7) on PG(1,7)"),
    entry!("recipe", ["name" => "psl2-8-on-28"], (28, 36, 9, 7, 2), "PSL(2,8) on 28 points"),
    entry!("recipe", ["name" => "psl2-9-on-10"], (10, 15, 9, 6, 5), "PSL(2,9) on PG(1,9)"),
    entry!("recipe", ["name" => "s6-on-10"], (10, 15, 9, 6, 5), "PSigmaL(2,9) on PG(1,9)"),
    entry!("recipe", ["name" => "psl2-11-on-11"], (11, 11, 5, 5, 2), "PSL(2,11) on 11 points"),
    entry!("recipe", ["name" => "m11-on-12"], (12, 22, 11, 6, 5), "M11 on 12 points"),
    entry!("recipe", ["name" => "a7-on-15"], (15, 35, 7, 3, 1), "A7 on PG(3,2)"),
    entry!("recipe", ["name" => "a8-on-15"], (15, 35, 7, 3, 1), "PSL(4,2) on PG(3,2)"),
    entry!("recipe", ["name" => "m22-on-22"], (22, 77, 21, 6, 5), "M22 on 22 points"),
    entry!("recipe", ["name" => "m22-2-on-22"], (22, 77, 21, 6, 5), "M22:2 on 22 points"),
    entry!("tensor", [], (64, 192, 21, 7, 2), "tensor-product blocks"),
    entry!("semilinear-tensor", ["h" => "1"], (64, 192, 21, 7, 2), "tensor-product blocks in GF(64)"),
];

/// Outcome of one manifest entry.
#[derive(Debug, Clone)]
pub struct CatalogRow {
    pub entry: CatalogEntry,
    pub summary: Option<Summary>,
    pub error: Option<String>,
}

impl CatalogRow {
    pub fn passed(&self) -> bool {
        match &self.summary {
            Some(s) => s.all_hold() && s.params.tuple() == self.entry.expect,
            None => false,
        }
    }

    pub fn render(&self) -> String {
        let status = if self.passed() { "pass" } else { "FAIL" };
        let body = match (&self.summary, &self.error) {
            (Some(s), _) => {
                let expect = if s.params.tuple() == self.entry.expect { "yes" } else { "no" };
                let implications = if s.violations.is_empty() { "ok" } else { "violated" };
                format!("{} expect={expect} implications={implications}", s.row())
            }
            (None, Some(e)) => e.clone(),
            (None, None) => String::new(),
        };
        format!("{status} {:<58} {body}", self.entry.label())
    }
}

pub fn run_entry(entry: &CatalogEntry, data_dir: &Path) -> CatalogRow {
    let outcome = build(entry.family, Options::from_pairs(entry.params), data_dir).and_then(|b| match b {
        Built::Design(d) => Summary::of(&d),
        Built::Formula(_) => Err(crate::CliError::Failed("formula-only family".to_string())),
    });
    match outcome {
        Ok(summary) => CatalogRow {
            entry: *entry,
            summary: Some(summary),
            error: None,
        },
        Err(e) => CatalogRow {
            entry: *entry,
            summary: None,
            error: Some(e.to_string()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ftdesign::design::DesignParams;

    #[test]
    fn expectations_are_admissible() {
        for e in MANIFEST {
            let (v, b, r, k, l) = e.expect;
            assert!(DesignParams::from_tuple(v, b, r, k, l).identities_hold(), "{}", e.label());
        }
    }

    #[test]
    fn labels_are_unique() {
        let mut labels: Vec<String> = MANIFEST.iter().map(CatalogEntry::label).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), MANIFEST.len());
    }
}
