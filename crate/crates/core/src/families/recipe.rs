//! Designs whose groups are supplied as data: permutation generators plus a base block.
//!
//! ```text
//! # PSL(2,5) acting on the projective line over GF(5); point 5 is infinity.
//! name=psl2-5-on-6
//! cite=PSL(2,5) on PG(1,5)
//! v=6
//! expect=6,10,5,3,2
//! expect_group_order=60
//! expect_point_stabilizer_order=10
//! expect_block_stabilizer_order=6
//! gen=[1,2,3,4,0,5]
//! gen=[0,4,3,2,1,5]
//! gen=[5,4,2,3,1,0]
//! base_block=0,1,2
//! ```
//!
//! `name`, `v`, `expect`, `base_block` and at least one `gen` are required; the
//! other keys are optional and every key except `gen` appears at most once.
//! `base_block` takes a list separated by commas or spaces. Any other key is an error.

use std::path::Path;

use thiserror::Error;

use crate::algebra::arith::gcd;
use crate::design::{compute_params, orbit_design, transitivity, DesignError, IncidenceDesign};
use crate::permgroup::{PermError, PermGroup, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecipeError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error("claim `{claim}` failed: expected {expected}, computed {computed}")]
    Claim {
        claim: &'static str,
        expected: String,
        computed: String,
    },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    pub name: String,
    pub cite: Option<String>,
    pub v: usize,
    pub expect: (u64, u64, u64, u64, u64),
    pub group_order: Option<u128>,
    pub point_stabilizer_order: Option<u128>,
    pub block_stabilizer_order: Option<u128>,
    pub generators: Vec<Permutation>,
    pub base_block: Vec<u32>,
}

fn syntax(line: usize, message: impl Into<String>) -> RecipeError {
    RecipeError::Syntax {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T, RecipeError> {
    value
        .trim()
        .parse()
        .map_err(|_| syntax(line, format!("`{key}` needs a non-negative integer, got `{value}`")))
}

fn list(line: usize, key: &str, value: &str) -> Result<Vec<u64>, RecipeError> {
    value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| number(line, key, t))
        .collect()
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<(), RecipeError> {
    if slot.is_some() {
        return Err(syntax(line, format!("duplicate key `{key}`")));
    }
    *slot = Some(value);
    Ok(())
}

pub fn parse_recipe(text: &str) -> Result<Recipe, RecipeError> {
    let mut name = None;
    let mut cite = None;
    let mut v: Option<usize> = None;
    let mut expect = None;
    let mut group_order = None;
    let mut point_order = None;
    let mut block_order = None;
    let mut base = None;
    let mut generators = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| syntax(line, format!("expected `key=value`, got `{trimmed}`")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "name" => set_once(&mut name, value.to_string(), line, key)?,
            "cite" => set_once(&mut cite, value.to_string(), line, key)?,
            "v" => set_once(&mut v, number(line, key, value)?, line, key)?,
            "expect" => {
                let t = list(line, key, value)?;
                if t.len() != 5 {
                    return Err(syntax(line, "`expect` needs v,b,r,k,lambda"));
                }
                set_once(&mut expect, (t[0], t[1], t[2], t[3], t[4]), line, key)?;
            }
            "expect_group_order" => set_once(&mut group_order, number(line, key, value)?, line, key)?,
            "expect_point_stabilizer_order" => {
                set_once(&mut point_order, number(line, key, value)?, line, key)?
            }
            "expect_block_stabilizer_order" => {
                set_once(&mut block_order, number(line, key, value)?, line, key)?
            }
            "gen" => {
                let perm = Permutation::parse_image_list(value)
                    .ok_or_else(|| syntax(line, "`gen` needs an image list `[i0,i1,...]`"))??;
                generators.push(perm);
            }
            "base_block" => {
                let block = list(line, key, value)?
                    .into_iter()
                    .map(|x| u32::try_from(x).map_err(|_| syntax(line, "point index too large")))
                    .collect::<Result<Vec<_>, _>>()?;
                set_once(&mut base, block, line, key)?;
            }
            other => return Err(syntax(line, format!("unknown key `{other}`"))),
        }
    }
    if generators.is_empty() {
        return Err(RecipeError::Missing("gen"));
    }
    Ok(Recipe {
        name: name.ok_or(RecipeError::Missing("name"))?,
        cite,
        v: v.ok_or(RecipeError::Missing("v"))?,
        expect: expect.ok_or(RecipeError::Missing("expect"))?,
        group_order,
        point_stabilizer_order: point_order,
        block_stabilizer_order: block_order,
        generators,
        base_block: base.ok_or(RecipeError::Missing("base_block"))?,
    })
}

fn tuple_string(t: (u64, u64, u64, u64, u64)) -> String {
    format!("({},{},{},{},{})", t.0, t.1, t.2, t.3, t.4)
}

fn check_order(claim: &'static str, expected: Option<u128>, computed: u128) -> Result<(), RecipeError> {
    match expected {
        Some(e) if e != computed => Err(RecipeError::Claim {
            claim,
            expected: e.to_string(),
            computed: computed.to_string(),
        }),
        _ => Ok(()),
    }
}

fn check_flag(claim: &'static str, holds: bool) -> Result<(), RecipeError> {
    if holds {
        Ok(())
    } else {
        Err(RecipeError::Claim {
            claim,
            expected: "true".to_string(),
            computed: "false".to_string(),
        })
    }
}

impl Recipe {
    /// Builds the orbit design and re-derives every stated and implied claim.
    ///
    /// The design carries `name`, `cite`, `expect`, `claims` and the computed
    /// `group_order`, `point_stabilizer_order` and `block_stabilizer_order` as metadata.
    pub fn build(&self) -> Result<IncidenceDesign, RecipeError> {
        let group = PermGroup::new(self.v, self.generators.clone())?;
        let design = orbit_design(self.v, &group, &self.base_block)?;
        let params = compute_params(&design)?;
        if !params.is_2design || params.tuple() != self.expect {
            return Err(RecipeError::Claim {
                claim: "parameters",
                expected: tuple_string(self.expect),
                computed: if params.is_2design {
                    tuple_string(params.tuple())
                } else {
                    format!("not a 2-design (v={}, b={})", params.v, params.b)
                },
            });
        }
        let order = group.order();
        check_order("group order", self.group_order, order)?;
        let point_order = group.point_stabilizer(0)?.order();
        check_order("point-stabilizer order", self.point_stabilizer_order, point_order)?;
        let block_order = order / design.b() as u128;
        check_order("block-stabilizer order", self.block_stabilizer_order, block_order)?;
        if gcd(params.r, params.lambda) != 1 {
            return Err(RecipeError::Claim {
                claim: "coprime",
                expected: "gcd(r, lambda) = 1".to_string(),
                computed: format!("gcd({}, {}) = {}", params.r, params.lambda, gcd(params.r, params.lambda)),
            });
        }
        check_flag("flag-transitive", transitivity(&design)?.flag_transitive)?;
        check_flag("point-primitive", group.is_primitive()?)?;
        let mut design = design
            .with_meta("family", "recipe")
            .with_meta("name", self.name.as_str())
            .with_meta("expect", {
                let t = self.expect;
                format!("{},{},{},{},{}", t.0, t.1, t.2, t.3, t.4)
            })
            .with_meta("claims", super::STANDARD_CLAIMS)
            .with_meta("group_order", order.to_string())
            .with_meta("point_stabilizer_order", point_order.to_string())
            .with_meta("block_stabilizer_order", block_order.to_string());
        if let Some(c) = &self.cite {
            design = design.with_meta("cite", c.as_str());
        }
        Ok(design)
    }
}

/// Reads, parses and builds a recipe file.
pub fn load_recipe(path: &Path) -> Result<IncidenceDesign, RecipeError> {
    let text = std::fs::read_to_string(path).map_err(|e| RecipeError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_recipe(&text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    const FANO: &str = "\
# the Fano plane under its cyclic Singer group and the multiplier 2
name=fano
v=7
expect=7,7,3,3,1
expect_group_order=21
gen=[1,2,3,4,5,6,0]
gen=[0,2,4,6,1,3,5]
base_block=1 2 4
";

    #[test]
    fn builds_fano() {
        let r = parse_recipe(FANO).unwrap();
        let d = r.build().unwrap();
        assert_eq!(d.meta_value("point_stabilizer_order"), Some("3"));
        assert_eq!(d.meta_value("block_stabilizer_order"), Some("3"));
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        let err = parse_recipe(&format!("{FANO}colour=red\n")).unwrap_err();
        assert_eq!(err, syntax(9, "unknown key `colour`"));
        let err = parse_recipe(&format!("{FANO}v=7\n")).unwrap_err();
        assert_eq!(err, syntax(9, "duplicate key `v`"));
    }

    #[test]
    fn names_the_failed_claim() {
        let wrong = FANO.replace("expect_group_order=21", "expect_group_order=42");
        let err = parse_recipe(&wrong).unwrap().build().unwrap_err();
        assert!(matches!(err, RecipeError::Claim { claim: "group order", .. }));
        let wrong = FANO.replace("base_block=1 2 4", "base_block=0 1 2");
        let err = parse_recipe(&wrong).unwrap().build().unwrap_err();
        assert!(matches!(err, RecipeError::Claim { claim: "parameters", .. }));
    }

    #[test]
    fn missing_keys() {
        let err = parse_recipe("name=x\nv=3\n").unwrap_err();
        assert_eq!(err, RecipeError::Missing("gen"));
    }
}
