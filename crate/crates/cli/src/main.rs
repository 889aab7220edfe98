use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use ftdesign::designfile::{parse_design, verify, write_design};
use ftdesign::families::parse_recipe;
use ftdesign::semilinear::search_flag_transitive;
use ftdesign_cli::catalog::{run_entry, MANIFEST};
use ftdesign_cli::construct::{build, formula_row, recipe_path, Built, Summary};
use ftdesign_cli::options::Options;
use ftdesign_cli::CliError;

#[derive(Parser)]
#[command(name = "ftdesign", version, about = "Flag-transitive 2-designs with gcd(r, lambda) = 1")]
struct Cli {
    /// Root for recipe files and relative design paths.
    #[arg(long, default_value = "data", global = true)]
    data_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one design: `construct wbs q=8 [out=FILE]`.
    Construct {
        family: String,
        #[arg(value_name = "KEY=VALUE")]
        args: Vec<String>,
    },
    /// Recompute every property of a design file and check its claims.
    Verify { path: PathBuf },
    /// Build and verify every catalog construction.
    Catalog {
        #[arg(value_name = "KEY=VALUE")]
        args: Vec<String>,
    },
    /// Search subgroups of AGammaL(1, p^d): `search p=11 d=1 [k_max=12] [out=DIR]`.
    Search {
        #[arg(value_name = "KEY=VALUE")]
        args: Vec<String>,
    },
    /// Rebuild recipe designs and check their stated orders: `recipe-check [name=NAME]`.
    RecipeCheck {
        #[arg(value_name = "KEY=VALUE")]
        args: Vec<String>,
    },
}

/// Exit status: 0 when every check passed, 1 when one failed, 2 on errors.
fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct { family, args } => construct(&family, &args, &cli.data_dir),
        Command::Verify { path } => verify_file(&path, &cli.data_dir),
        Command::Catalog { args } => catalog(&args, &cli.data_dir),
        Command::Search { args } => search(&args),
        Command::RecipeCheck { args } => recipe_check(&args, &cli.data_dir),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn default_name(family: &str, args: &[String]) -> String {
    let mut name = family.to_string();
    for a in args {
        name.push('-');
        name.extend(a.chars().filter(|c| c.is_ascii_alphanumeric()));
    }
    name + ".design"
}

fn construct(family: &str, args: &[String], data_dir: &Path) -> Result<bool, CliError> {
    let mut opts = Options::parse(args)?;
    let out: Option<PathBuf> = opts.optional("out")?;
    match build(family, opts, data_dir)? {
        Built::Formula(p) => {
            println!("{}", formula_row(&p));
            Ok(p.identities_hold() && p.coprime)
        }
        Built::Design(d) => {
            let path = out.unwrap_or_else(|| {
                let params: Vec<String> = args.iter().filter(|a| !a.starts_with("out=")).cloned().collect();
                PathBuf::from(default_name(family, &params))
            });
            write_file(&path, &write_design(&d))?;
            eprintln!("wrote {}", path.display());
            let summary = Summary::of(&d)?;
            println!("{}", summary.row());
            Ok(summary.all_hold())
        }
    }
}

fn resolve(path: &Path, data_dir: &Path) -> PathBuf {
    if path.is_absolute() || path.exists() {
        path.to_path_buf()
    } else {
        data_dir.join(path)
    }
}

fn verify_file(path: &Path, data_dir: &Path) -> Result<bool, CliError> {
    let path = resolve(path, data_dir);
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let report = verify(&parse_design(&text)?);
    print!("{}", report.render());
    let passed = report.passed();
    println!("{}", if passed { "verify: all claims hold" } else { "verify: FAIL" });
    Ok(passed)
}

fn catalog(args: &[String], data_dir: &Path) -> Result<bool, CliError> {
    Options::parse(args)?.finish()?;
    let mut all = true;
    let mut passed = 0;
    let stdout = std::io::stdout();
    for entry in MANIFEST {
        let start = Instant::now();
        let row = run_entry(entry, data_dir);
        eprintln!("{:>9.2}s {}", start.elapsed().as_secs_f64(), entry.label());
        all &= row.passed();
        passed += row.passed() as usize;
        let mut lock = stdout.lock();
        writeln!(lock, "{}", row.render()).and_then(|_| lock.flush()).map_err(|e| CliError::Io(e.to_string()))?;
    }
    println!("catalog: {passed} of {} rows pass", MANIFEST.len());
    Ok(all)
}

fn search(args: &[String]) -> Result<bool, CliError> {
    let mut opts = Options::parse(args)?;
    let p = opts.required("p")?;
    let d = opts.required("d")?;
    let k_max = opts.optional("k_max")?.unwrap_or(12);
    let out: Option<PathBuf> = opts.optional("out")?;
    opts.finish()?;
    let start = Instant::now();
    let hits = search_flag_transitive(p, d, k_max)?;
    eprintln!("search took {:.2}s", start.elapsed().as_secs_f64());
    for h in &hits {
        println!("{}", h.report_line());
        if let Some(dir) = &out {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            write_file(&dir.join(format!("search-{}.design", h.fingerprint)), &write_design(&h.design))?;
        }
    }
    println!("search: {} hits", hits.len());
    Ok(hits.iter().all(|h| h.primitive))
}

fn recipe_check(args: &[String], data_dir: &Path) -> Result<bool, CliError> {
    let mut opts = Options::parse(args)?;
    let name: Option<String> = opts.optional("name")?;
    let out: Option<PathBuf> = opts.optional("out")?;
    opts.finish()?;
    let paths = match &name {
        Some(n) => vec![recipe_path(data_dir, n)],
        None => {
            let dir = data_dir.join("recipes");
            let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
                .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "recipe"))
                .collect();
            paths.sort();
            paths
        }
    };
    if out.is_some() && paths.len() != 1 {
        return Err(CliError::Usage("`out=` needs `name=`".to_string()));
    }
    let mut all = true;
    for path in &paths {
        let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let outcome = parse_recipe(&text)
            .and_then(|r| r.build())
            .map_err(CliError::from)
            .and_then(|d| Ok((Summary::of(&d)?, d)));
        match outcome {
            Ok((s, d)) => {
                let ok = s.all_hold();
                all &= ok;
                let order = |k: &str| d.meta_value(k).unwrap_or("?").to_string();
                println!(
                    "{} {label:<14} {} |G|={} |G_a|={} |G_B|={}",
                    if ok { "pass" } else { "FAIL" },
                    s.row(),
                    order("group_order"),
                    order("point_stabilizer_order"),
                    order("block_stabilizer_order")
                );
                if let Some(o) = &out {
                    write_file(o, &write_design(&d))?;
                }
            }
            Err(e) => {
                all = false;
                println!("FAIL {label:<14} {e}");
            }
        }
    }
    Ok(all)
}
