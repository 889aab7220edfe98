//! Text format for designs and the `verify` pass over it.
//!
//! ```text
//! v=7
//! family=point-hyperplane
//! field=GF(2^1)/modulus=[0,1]
//! claims=2-design,coprime,flag-transitive,point-primitive
//! expect=7,7,3,3,1
//! group degree=7 generators=2
//! perm: [1,2,3,4,5,6,0]
//! perm: [0,2,4,6,1,3,5]
//! blocks count=7
//! 0 1 3
//! ...
//! ```
//!
//! Header lines are `key=value`; `v` comes first, then `family` and `field`,
//! then the remaining keys in byte order. Blocks are sorted index lists in
//! lexicographic order. Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::design::{
    check_dembowski_implications, compute_params, transitivity, DesignError, IncidenceDesign,
};
use crate::permgroup::{PermError, PermGroup, Permutation};

/// Property names accepted in the `claims=` header.
pub const CLAIMS: [&str; 5] = [
    "2-design",
    "coprime",
    "flag-transitive",
    "point-primitive",
    "2-transitive",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header `v=`")]
    MissingV,
    #[error("missing `blocks` section")]
    MissingBlocks,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn write_design(d: &IncidenceDesign) -> String {
    let mut out = String::new();
    writeln!(out, "v={}", d.v()).unwrap();
    for key in ["family", "field"] {
        if let Some(value) = d.meta_value(key) {
            writeln!(out, "{key}={value}").unwrap();
        }
    }
    for (key, value) in d.meta() {
        if key != "family" && key != "field" {
            writeln!(out, "{key}={value}").unwrap();
        }
    }
    if let Some(g) = d.group() {
        writeln!(out, "group degree={} generators={}", g.degree(), g.generators().len()).unwrap();
        for p in g.generators() {
            writeln!(out, "perm: {}", p.to_image_list()).unwrap();
        }
    }
    writeln!(out, "blocks count={}", d.b()).unwrap();
    for b in d.blocks() {
        let parts: Vec<String> = b.iter().map(u32::to_string).collect();
        writeln!(out, "{}", parts.join(" ")).unwrap();
    }
    out
}

/// A parsed file; the group is kept apart so that closure can be checked as a claim.
#[derive(Debug, Clone)]
pub struct ParsedDesign {
    pub design: IncidenceDesign,
    pub group: Option<PermGroup>,
}

pub fn parse_design(text: &str) -> Result<ParsedDesign, FormatError> {
    enum Section {
        Header,
        Group,
        Blocks,
    }
    let mut section = Section::Header;
    let mut meta: BTreeMap<String, String> = BTreeMap::new();
    let mut v: Option<usize> = None;
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    let mut blocks: Option<Vec<Vec<u32>>> = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("group").filter(|r| r.is_empty() || r.starts_with(' ')) {
            let deg = rest
                .split_whitespace()
                .find_map(|t| t.strip_prefix("degree="))
                .ok_or_else(|| syntax(ln, "group header needs degree="))?;
            degree = Some(deg.parse().map_err(|_| syntax(ln, "bad group degree"))?);
            section = Section::Group;
            continue;
        }
        if line == "blocks" || line.starts_with("blocks ") {
            blocks = Some(Vec::new());
            section = Section::Blocks;
            continue;
        }
        match section {
            Section::Header => {
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| syntax(ln, "expected key=value"))?;
                if key == "v" {
                    v = Some(value.parse().map_err(|_| syntax(ln, "bad point count"))?);
                } else {
                    meta.insert(key.to_string(), value.to_string());
                }
            }
            Section::Group => {
                let list = line
                    .strip_prefix("perm:")
                    .ok_or_else(|| syntax(ln, "expected `perm: [..]`"))?;
                let p = Permutation::parse_image_list(list)
                    .ok_or_else(|| syntax(ln, "malformed image list"))??;
                gens.push(p);
            }
            Section::Blocks => {
                let block = line
                    .split_whitespace()
                    .map(|t| t.parse::<u32>())
                    .collect::<Result<Vec<u32>, _>>()
                    .map_err(|_| syntax(ln, "bad block entry"))?;
                blocks.as_mut().expect("in blocks section").push(block);
            }
        }
    }
    let v = v.ok_or(FormatError::MissingV)?;
    let blocks = blocks.ok_or(FormatError::MissingBlocks)?;
    let mut design = IncidenceDesign::new(v, blocks)?;
    design.set_meta(meta);
    let group = match degree {
        Some(n) => Some(PermGroup::new(n, gens)?),
        None => None,
    };
    Ok(ParsedDesign { design, group })
}

/// One verified claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(out, "{status} {}", c.name).unwrap();
            } else {
                writeln!(out, "{status} {}: {}", c.name, c.detail).unwrap();
            }
        }
        out
    }
}

fn parse_expect(text: &str) -> Option<(u64, u64, u64, u64, u64)> {
    let parts: Vec<u64> = text
        .split(',')
        .map(|t| t.trim().parse().ok())
        .collect::<Option<_>>()?;
    match parts[..] {
        [v, b, r, k, l] => Some((v, b, r, k, l)),
        _ => None,
    }
}

/// Recomputes every property of a parsed file and checks the file's `expect=` and `claims=`.
pub fn verify(parsed: &ParsedDesign) -> VerifyReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        })
    };
    let d = &parsed.design;
    let params = match compute_params(d) {
        Ok(p) => p,
        Err(e) => {
            push("params", false, e.to_string());
            return VerifyReport { checks };
        }
    };
    let describe = format!(
        "v={} b={} r={} k={} lambda={} uniform k/r/lambda={}/{}/{}",
        params.v, params.b, params.r, params.k, params.lambda, params.uniform_k, params.uniform_r, params.uniform_lambda
    );
    if let Some(expect) = d.meta_value("expect") {
        match parse_expect(expect) {
            Some(t) => push(
                "expect",
                params.is_2design && params.tuple() == t,
                format!("claimed {expect}; computed {describe}"),
            ),
            None => push("expect", false, format!("unreadable tuple {expect:?}")),
        }
    }
    let claims: Vec<&str> = d
        .meta_value("claims")
        .map(|c| c.split(',').map(str::trim).filter(|s| !s.is_empty()).collect())
        .unwrap_or_default();
    for c in &claims {
        if !CLAIMS.contains(c) {
            push("claims", false, format!("unknown claim {c:?}"));
        }
    }
    if claims.contains(&"2-design") {
        push("2-design", params.is_2design, describe.clone());
        if params.is_2design {
            push(
                "identities",
                params.identities_hold(),
                "bk = vr and lambda(v-1) = r(k-1)".to_string(),
            );
        }
    }
    if claims.contains(&"coprime") {
        push(
            "coprime",
            params.coprime,
            format!("gcd(r, lambda) = gcd({}, {})", params.r, params.lambda),
        );
    }
    let group_claims = ["flag-transitive", "point-primitive", "2-transitive"];
    if !claims.iter().any(|c| group_claims.contains(c)) {
        return VerifyReport { checks };
    }
    let Some(group) = &parsed.group else {
        push("group", false, "claims need a group section".to_string());
        return VerifyReport { checks };
    };
    let with_group = match d.clone().with_group(group.clone()) {
        Ok(g) => {
            push("group-closed", true, "every generator maps blocks to blocks".to_string());
            g
        }
        Err(e) => {
            push("group-closed", false, e.to_string());
            return VerifyReport { checks };
        }
    };
    if claims.contains(&"flag-transitive") {
        match transitivity(&with_group) {
            Ok(t) => {
                push(
                    "flag-transitive",
                    t.flag_transitive,
                    format!("flag orbit {} of {}", t.flag_orbit, t.flags),
                );
                push("point-transitive", t.point_transitive, String::new());
                push("block-transitive", t.block_transitive, String::new());
            }
            Err(e) => push("flag-transitive", false, e.to_string()),
        }
    }
    if claims.contains(&"point-primitive") {
        let prim = group.is_primitive();
        push(
            "point-primitive",
            prim == Ok(true),
            match prim {
                Ok(b) => format!("primitive={b}"),
                Err(e) => e.to_string(),
            },
        );
    }
    if claims.contains(&"2-transitive") {
        push("2-transitive", group.is_two_transitive(), String::new());
    }
    match check_dembowski_implications(&with_group) {
        Ok(r) => push("implications", r.holds(), r.violations.join("; ")),
        Err(e) => push("implications", false, e.to_string()),
    }
    VerifyReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano_file() -> String {
        let shift = Permutation::from_fn(7, |i| (i + 1) % 7).unwrap();
        let times2 = Permutation::from_fn(7, |i| (2 * i) % 7).unwrap();
        let blocks = (0..7u32).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
        let d = IncidenceDesign::new(7, blocks)
            .unwrap()
            .with_group(PermGroup::new(7, vec![shift, times2]).unwrap())
            .unwrap()
            .with_meta("family", "difference-set")
            .with_meta("expect", "7,7,3,3,1")
            .with_meta("claims", "2-design,coprime,flag-transitive,point-primitive");
        write_design(&d)
    }

    #[test]
    fn round_trip_is_byte_stable() {
        let text = fano_file();
        let parsed = parse_design(&text).unwrap();
        let again = parsed.design.clone().with_group(parsed.group.unwrap()).unwrap();
        assert_eq!(write_design(&again), text);
        assert!(text.starts_with("v=7\nfamily=difference-set\nclaims="));
    }

    #[test]
    fn group_prefixed_keys_are_metadata() {
        let text = fano_file().replace("claims=", "group_order=21\nclaims=");
        let parsed = parse_design(&text).unwrap();
        assert_eq!(parsed.design.meta_value("group_order"), Some("21"));
        assert_eq!(parsed.group.unwrap().order(), 21);
    }

    #[test]
    fn verify_passes_on_clean_file() {
        let report = verify(&parse_design(&fano_file()).unwrap());
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn verify_names_broken_invariant() {
        let text = fano_file().replace("\n0 1 3\n", "\n0 1\n");
        let report = verify(&parse_design(&text).unwrap());
        assert!(!report.passed());
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"2-design"));
        assert!(failed.contains(&"expect"));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_design("blocks\n0 1\n").unwrap_err(), FormatError::MissingV);
        assert_eq!(parse_design("v=3\n").unwrap_err(), FormatError::MissingBlocks);
        assert!(matches!(
            parse_design("v=3\nnonsense\nblocks\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_design("v=3\nblocks\n0 x\n"),
            Err(FormatError::Syntax { line: 3, .. })
        ));
    }
}
