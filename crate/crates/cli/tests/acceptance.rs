//! Acceptance criteria, one `pass`/`FAIL` line each, with item lines below.
//!
//! Runs without the libtest harness so that the lines always reach the output. The
//! process fails when a criterion's status differs from `EXPECTED_STATUS`: criterion 1
//! is red because the tensor design cannot exist (see the README), everything else
//! must be green.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use ftdesign::design::{compute_params, invariant_fingerprint, IncidenceDesign};
use ftdesign::designfile::write_design;
use ftdesign::families::{
    build_coset_union_design, build_hermitian_unital, build_point_hyperplane, build_projective_points_design,
    build_suzuki_design, build_tensor_design, build_unitary_design, build_wbs, load_recipe, ree_parameters,
    build_affine_subspace_design, FamilyError, Placement,
};
use ftdesign::semilinear::{paley_design, search_flag_transitive, PaleyParams};
use ftdesign_cli::catalog::{run_entry, MANIFEST};

type Tuple = (u64, u64, u64, u64, u64);

const EXPECTED_STATUS: [bool; 6] = [false, true, true, true, true, true];

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

struct Criterion {
    number: usize,
    title: &'static str,
    items: Vec<(bool, String)>,
}

impl Criterion {
    fn new(number: usize, title: &'static str) -> Self {
        Criterion { number, title, items: Vec::new() }
    }

    fn item(&mut self, ok: bool, text: impl Into<String>) {
        self.items.push((ok, text.into()));
    }

    fn passed(&self) -> bool {
        !self.items.is_empty() && self.items.iter().all(|(ok, _)| *ok)
    }

    fn print(&self) {
        let good = self.items.iter().filter(|(ok, _)| *ok).count();
        println!(
            "{} {} {} ({good}/{} items)",
            status(self.passed()),
            self.number,
            self.title,
            self.items.len()
        );
        for (ok, text) in &self.items {
            println!("    {} {text}", status(*ok));
        }
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn tuple(t: Tuple) -> String {
    format!("({},{},{},{},{})", t.0, t.1, t.2, t.3, t.4)
}

/// Builds, times and compares one construction with its expected parameters.
fn reproduce(
    c: &mut Criterion,
    label: &str,
    expect: Tuple,
    limit: Duration,
    build: impl FnOnce() -> Result<IncidenceDesign, FamilyError>,
) {
    let start = Instant::now();
    let outcome = build();
    let took = start.elapsed();
    let within = took <= limit;
    match outcome {
        Ok(d) => {
            let p = compute_params(&d).expect("params");
            let ok = p.is_2design && p.tuple() == expect && within;
            c.item(
                ok,
                format!("{label} -> {} expected {} in {:.2}s (limit {}s)", tuple(p.tuple()), tuple(expect), took.as_secs_f64(), limit.as_secs()),
            );
        }
        Err(e) => c.item(false, format!("{label} -> expected {}: {e}", tuple(expect))),
    }
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::new(1, "parameter reproduction");
    let minute = Duration::from_secs(60);
    let ten = Duration::from_secs(600);
    reproduce(&mut c, "point-hyperplane n=3 q=2", (7, 7, 3, 3, 1), minute, || build_point_hyperplane(3, 2));
    reproduce(&mut c, "point-hyperplane n=4 q=2", (15, 15, 7, 7, 3), minute, || build_point_hyperplane(4, 2));
    reproduce(&mut c, "wbs q=8", (28, 63, 9, 4, 1), minute, || build_wbs(8));
    reproduce(&mut c, "hermitian-unital q=3", (28, 63, 9, 4, 1), minute, || build_hermitian_unital(3));
    reproduce(&mut c, "unitary q=3", (28, 252, 27, 3, 2), minute, || build_unitary_design(3));
    reproduce(&mut c, "suzuki q=8", (65, 520, 64, 8, 7), minute, || build_suzuki_design(8));
    reproduce(&mut c, "tensor", (64, 192, 21, 7, 2), minute, build_tensor_design);
    // b = vr/k = 81 * 80 / 4.
    reproduce(&mut c, "coset-union p=3 d=4 n=2 u=0 omega=4 line", (81, 1620, 80, 4, 3), minute, || {
        build_coset_union_design(3, 4, 2, 0, 4, Placement::Line)
    });
    let start = Instant::now();
    match ree_parameters(27, 1) {
        Ok(p) => {
            // b = q^2 (q^3 + 1) for i = 1.
            let expect = (19_684, 729 * 19_684, 19_683, 27, 26);
            let ok = p.tuple() == expect && p.identities_hold() && p.coprime && start.elapsed() <= minute;
            c.item(ok, format!("ree q=27 i=1 -> {} expected {}", tuple(p.tuple()), tuple(expect)));
        }
        Err(e) => c.item(false, format!("ree q=27 i=1: {e}")),
    }
    reproduce(&mut c, "suzuki q=32", (1025, 32_800, 1024, 32, 31), ten, || build_suzuki_design(32));
    reproduce(&mut c, "affine-subspace p=2 d=10 n=2 u=3 line", (1024, 130_944, 1023, 8, 7), ten, || {
        build_affine_subspace_design(2, 10, 2, 3, Placement::Line)
    });
    c
}

/// `(file, (v,b,r,k,lambda), |G_a|)` as tabulated for the sporadic and small examples.
const TABLE: [(&str, Tuple, u128); 11] = [
    ("psl2-5-on-6", (6, 10, 5, 3, 2), 10),
    ("psl2-7-on-8", (8, 14, 7, 4, 3), 21),
    ("psl2-8-on-28", (28, 36, 9, 7, 2), 18),
    ("psl2-9-on-10", (10, 15, 9, 6, 5), 36),
    ("psl2-11-on-11", (11, 11, 5, 5, 2), 60),
    ("m11-on-12", (12, 22, 11, 6, 5), 660),
    ("m22-on-22", (22, 77, 21, 6, 5), 20_160),
    ("m22-2-on-22", (22, 77, 21, 6, 5), 40_320),
    ("s6-on-10", (10, 15, 9, 6, 5), 72),
    ("a7-on-15", (15, 35, 7, 3, 1), 168),
    ("a8-on-15", (15, 35, 7, 3, 1), 1344),
];

fn criterion_2() -> Criterion {
    let mut c = Criterion::new(2, "recipe designs and point stabilizers");
    for (name, expect, stab) in TABLE {
        let path = data_dir().join("recipes").join(format!("{name}.recipe"));
        match load_recipe(&path) {
            Ok(d) => {
                let p = compute_params(&d).expect("params");
                let g = d.group().expect("recipe designs carry their group");
                let computed = g.point_stabilizer(0).expect("stabilizer").order();
                let ok = p.tuple() == expect && computed == stab;
                c.item(ok, format!("{name} -> {} |G_a|={computed} expected {} |G_a|={stab}", tuple(p.tuple()), tuple(expect)));
            }
            Err(e) => c.item(false, format!("{name}: {e}")),
        }
    }
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::new(3, "property suite over the emitted catalog");
    let mut emitted = 0;
    for entry in MANIFEST {
        let row = run_entry(entry, &data_dir());
        let Some(s) = &row.summary else {
            println!("    note: {} is not emitted: {}", entry.label(), row.error.as_deref().unwrap_or(""));
            continue;
        };
        emitted += 1;
        let p = &s.params;
        let ok = p.is_2design
            && p.identities_hold()
            && p.coprime
            && s.flag_transitive
            && s.primitive
            && s.violations.is_empty();
        c.item(ok, format!("{} {}", entry.label(), s.row()));
    }
    c.item(emitted >= 20, format!("{emitted} emitted designs (at least 20 required)"));
    c
}

fn hash(d: &IncidenceDesign) -> String {
    invariant_fingerprint(d).expect("fingerprint").hash()
}

fn develop(v: u32, base: &[u32]) -> IncidenceDesign {
    let blocks = (0..v).map(|t| base.iter().map(|&x| (x + t) % v).collect()).collect();
    IncidenceDesign::new(v as usize, blocks).expect("developed design")
}

fn ag2_3_lines() -> IncidenceDesign {
    let mut lines = BTreeSet::new();
    for (dx, dy) in [(0, 1), (1, 0), (1, 1), (1, 2)] {
        for x in 0..3 {
            for y in 0..3 {
                let mut l: Vec<u32> = (0..3).map(|t| 3 * ((x + t * dx) % 3) + (y + t * dy) % 3).collect();
                l.sort();
                lines.insert(l);
            }
        }
    }
    IncidenceDesign::new(9, lines.into_iter().collect()).expect("AG(2,3)")
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::new(4, "oracle equivalences");
    let fano = build_point_hyperplane(3, 2).expect("Fano");
    let cyclic = develop(7, &[1, 2, 4]);
    c.item(hash(&fano) == hash(&cyclic), format!("point-hyperplane n=3 q=2 {} vs C7 difference set {}", hash(&fano), hash(&cyclic)));
    let unital = build_hermitian_unital(2).expect("unital");
    let ag = ag2_3_lines();
    c.item(hash(&unital) == hash(&ag), format!("hermitian-unital q=2 {} vs AG(2,3) lines {}", hash(&unital), hash(&ag)));
    let pp = PaleyParams { p: 11, d: 1, i: 2, theta: 1, y: 1 };
    let paley = paley_design(&pp).expect("paley").expect("a biplane exists");
    let residues: Vec<u32> = (1..11u32).map(|x| x * x % 11).collect::<BTreeSet<_>>().into_iter().collect();
    let qr = develop(11, &residues);
    c.item(hash(&paley) == hash(&qr), format!("paley (11,5,2) {} vs quadratic residues mod 11 {}", hash(&paley), hash(&qr)));
    let hits = search_flag_transitive(11, 1, 12).expect("search");
    let found = hits.iter().any(|h| h.fingerprint == hash(&paley));
    let lines: Vec<String> = hits.iter().map(|h| h.report_line()).collect();
    c.item(found, format!("search p=11 d=1 k_max=12 rediscovers {}: [{}]", hash(&paley), lines.join("; ")));
    c
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ftdesign"))
        .arg("--data-dir")
        .arg(data_dir())
        .args(args)
        .output()
        .expect("run ftdesign");
    (out.status.code().unwrap_or(-1), out.stdout, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::new(5, "determinism");
    for args in [&["catalog"][..], &["search", "p=11", "d=1", "k_max=12"][..]] {
        let (code_a, a, _) = run_cli(args);
        let (code_b, b, _) = run_cli(args);
        let same = a == b && code_a == code_b && !a.is_empty();
        c.item(same, format!("`{}` twice: {} bytes, identical={}, exit {code_a}", args.join(" "), a.len(), a == b));
    }
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new(6, "negative controls");
    match build_projective_points_design(3, 3) {
        Err(FamilyError::Precondition(m)) => c.item(true, format!("projective-points n=3 q=3 rejected: {m}")),
        other => c.item(false, format!("projective-points n=3 q=3 not rejected: {:?}", other.map(|d| d.b()))),
    }

    let dir = std::env::temp_dir().join(format!("ftdesign-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let fano = build_point_hyperplane(3, 2).expect("Fano");
    let text = write_design(&fano);
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let first_block = lines.iter().position(|l| l.starts_with("blocks count=")).expect("blocks") + 1;
    let shortened: Vec<&str> = lines[first_block].split(' ').collect();
    lines[first_block] = shortened[..shortened.len() - 1].join(" ");
    let path = dir.join("corrupted.design");
    std::fs::write(&path, lines.join("\n") + "\n").expect("write");
    let (code, out, _) = run_cli(&["verify", path.to_str().expect("utf-8 path")]);
    let out = String::from_utf8_lossy(&out);
    let named = out.lines().find(|l| l.starts_with("FAIL 2-design")).unwrap_or("").to_string();
    c.item(code == 1 && !named.is_empty(), format!("corrupted Fano file: exit {code}, `{named}`"));
    let _ = std::fs::remove_dir_all(&dir);

    match build_coset_union_design(2, 6, 2, 0, 7, Placement::Line) {
        Err(FamilyError::Precondition(m)) => {
            c.item(m.contains("= gcd(9, 6) = 3"), format!("coset-union p=2 d=6 n=2 u=0 omega=7 rejected: {m}"));
        }
        other => c.item(false, format!("coset-union omega=7 not rejected: {:?}", other.map(|d| d.b()))),
    }
    let (code, _, err) = run_cli(&["construct", "coset-union", "p=2", "d=6", "n=2", "u=0", "omega=7", "placement=line"]);
    c.item(code == 2 && err.contains("gcd(9, 6) = 3"), format!("cli prints the witness: exit {code}, {}", err.trim()));
    c
}

fn main() {
    let start = Instant::now();
    let criteria = [criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(), criterion_6()];
    println!();
    for c in &criteria {
        c.print();
    }
    let green = criteria.iter().filter(|c| c.passed()).count();
    println!("acceptance: {green} of {} criteria pass in {:.1}s", criteria.len(), start.elapsed().as_secs_f64());
    let unexpected: Vec<usize> = criteria
        .iter()
        .zip(EXPECTED_STATUS)
        .filter(|(c, want)| c.passed() != *want)
        .map(|(c, _)| c.number)
        .collect();
    if unexpected.is_empty() {
        println!("acceptance: every status matches the recorded expectation (criterion 1 is red: no 2-(64,7,2) tensor design exists)");
    } else {
        println!("acceptance: status changed for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
