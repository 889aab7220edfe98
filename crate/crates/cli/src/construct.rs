//! Family names, their `key=value` parameters and the summary row printed for a design.

use std::path::Path;

use ftdesign::design::{check_dembowski_implications, compute_params, DesignParams, IncidenceDesign};
use ftdesign::families::{self, Placement};
use ftdesign::semilinear::{paley_design, PaleyParams};

use crate::options::Options;
use crate::CliError;

/// Families accepted by `construct`, with their parameter keys.
pub const FAMILIES: &[(&str, &str)] = &[
    ("point-hyperplane", "n q"),
    ("projective-points", "n q"),
    ("wbs", "q"),
    ("hermitian-unital", "q"),
    ("unitary", "q"),
    ("suzuki", "q"),
    ("ree", "q i"),
    ("affine-subspace", "p d n u placement"),
    ("coset-union", "p d n u omega placement"),
    ("paley", "p d i theta y"),
    ("tensor", ""),
    ("semilinear-tensor", "h"),
    ("recipe", "name"),
];

/// A constructed design, or closed-form parameters for families too large to build.
#[derive(Debug, Clone)]
pub enum Built {
    Design(IncidenceDesign),
    Formula(DesignParams),
}

fn placement(opts: &mut Options) -> Result<Placement, CliError> {
    let raw: String = opts.required("placement")?;
    Placement::parse(&raw).ok_or_else(|| CliError::Usage(format!("placement `{raw}` must be line or hyperplane")))
}

/// Builds `family` from `opts`; every key in `opts` must belong to the family.
pub fn build(family: &str, mut opts: Options, data_dir: &Path) -> Result<Built, CliError> {
    let design = match family {
        "point-hyperplane" | "projective-points" => {
            let (n, q) = (opts.required("n")?, opts.required("q")?);
            opts.finish()?;
            if family == "point-hyperplane" {
                families::build_point_hyperplane(n, q)?
            } else {
                families::build_projective_points_design(n, q)?
            }
        }
        "wbs" | "hermitian-unital" | "unitary" | "suzuki" => {
            let q = opts.required("q")?;
            opts.finish()?;
            match family {
                "wbs" => families::build_wbs(q)?,
                "hermitian-unital" => families::build_hermitian_unital(q)?,
                "unitary" => families::build_unitary_design(q)?,
                _ => families::build_suzuki_design(q)?,
            }
        }
        "ree" => {
            let (q, i) = (opts.required("q")?, opts.required("i")?);
            opts.finish()?;
            return Ok(Built::Formula(families::ree_parameters(q, i)?));
        }
        "affine-subspace" => {
            let (p, d, n, u) = (opts.required("p")?, opts.required("d")?, opts.required("n")?, opts.required("u")?);
            let place = placement(&mut opts)?;
            opts.finish()?;
            families::build_affine_subspace_design(p, d, n, u, place)?
        }
        "coset-union" => {
            let (p, d, n, u) = (opts.required("p")?, opts.required("d")?, opts.required("n")?, opts.required("u")?);
            let omega = opts.required("omega")?;
            let place = placement(&mut opts)?;
            opts.finish()?;
            families::build_coset_union_design(p, d, n, u, omega, place)?
        }
        "paley" => {
            let pp = PaleyParams {
                p: opts.required("p")?,
                d: opts.required("d")?,
                i: opts.required("i")?,
                theta: opts.required("theta")?,
                y: opts.required("y")?,
            };
            opts.finish()?;
            let (v, k, lambda) = pp.vkl()?;
            let design = paley_design(&pp)?.ok_or_else(|| {
                CliError::Failed(format!("no union of theta orbits gives a symmetric 2-({v},{k},{lambda}) design"))
            })?;
            let claims = if compute_params(&design)?.coprime {
                families::STANDARD_CLAIMS.to_string()
            } else {
                families::STANDARD_CLAIMS.replace("coprime,", "")
            };
            design
                .with_meta("expect", format!("{v},{v},{k},{k},{lambda}"))
                .with_meta("claims", claims)
        }
        "tensor" => {
            opts.finish()?;
            families::build_tensor_design()?
        }
        "semilinear-tensor" => {
            let h = opts.required("h")?;
            opts.finish()?;
            families::build_semilinear_tensor_variants(h)?
        }
        "recipe" => {
            let name: String = opts.required("name")?;
            opts.finish()?;
            families::load_recipe(&recipe_path(data_dir, &name))?
        }
        other => {
            let names: Vec<&str> = FAMILIES.iter().map(|(n, _)| *n).collect();
            return Err(CliError::Usage(format!("unknown family `{other}`; expected one of {}", names.join(", "))));
        }
    };
    Ok(Built::Design(design))
}

/// `name` is a file under `<data-dir>/recipes/` with or without the `.recipe` suffix, or a path.
pub fn recipe_path(data_dir: &Path, name: &str) -> std::path::PathBuf {
    if name.contains('/') {
        return name.into();
    }
    let file = if name.ends_with(".recipe") {
        name.to_string()
    } else {
        format!("{name}.recipe")
    };
    data_dir.join("recipes").join(file)
}

/// Recomputed properties of a design with an attached group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub params: DesignParams,
    pub flag_transitive: bool,
    pub primitive: bool,
    pub violations: Vec<String>,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Summary {
    pub fn of(d: &IncidenceDesign) -> Result<Summary, CliError> {
        let params = compute_params(d)?;
        let report = check_dembowski_implications(d)?;
        Ok(Summary {
            params,
            flag_transitive: report.flag_transitive,
            primitive: report.primitive == Some(true),
            violations: report.violations,
        })
    }

    /// `v b r k lambda coprime=.. flag=.. prim=..`; `r k lambda` are `-` when not uniform.
    pub fn row(&self) -> String {
        let p = &self.params;
        let counts = if p.is_2design {
            format!("{} {} {} {} {}", p.v, p.b, p.r, p.k, p.lambda)
        } else {
            format!("{} {} - - -", p.v, p.b)
        };
        format!(
            "{counts} coprime={} flag={} prim={}",
            yes(p.coprime),
            yes(self.flag_transitive),
            yes(self.primitive)
        )
    }

    /// 2-design with the identities, coprime, flag-transitive, primitive, no violations.
    pub fn all_hold(&self) -> bool {
        let p = &self.params;
        p.is_2design
            && p.identities_hold()
            && p.coprime
            && self.flag_transitive
            && self.primitive
            && self.violations.is_empty()
    }
}

/// The row for closed-form parameters.
pub fn formula_row(p: &DesignParams) -> String {
    format!(
        "{} {} {} {} {} coprime={} identities={}",
        p.v,
        p.b,
        p.r,
        p.k,
        p.lambda,
        yes(p.coprime),
        yes(p.identities_hold())
    )
}
