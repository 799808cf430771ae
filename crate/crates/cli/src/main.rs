use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod output;

use output::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "opforge", version, about = "Exact computations with operads, modules, bar complexes and layer cubes")]
struct Cli {
    /// Emit JSON, to stdout or to the given file.
    #[arg(long, global = true, num_args = 0..=1, value_name = "PATH")]
    json: Option<Option<PathBuf>>,
    /// Emit CSV, to stdout or to the given file.
    #[arg(long, global = true, num_args = 0..=1, value_name = "PATH", conflicts_with = "json")]
    csv: Option<Option<PathBuf>>,
    /// Lift the arity caps.
    #[arg(long, global = true)]
    force: bool,
    /// Compute homology over F_p instead of Q.
    #[arg(long, global = true, value_name = "P")]
    prime: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect an operad.
    #[command(subcommand)]
    Operad(OperadCmd),
    /// Inspect right modules.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Bar complexes.
    #[command(subcommand)]
    Bar(BarCmd),
    /// Poincare-Koszul duality reports.
    #[command(subcommand)]
    Koszul(KoszulCmd),
    /// Total fibers of configuration-space cubes.
    Layers {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k: usize,
    },
    /// Run the acceptance checks.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct OperadSel {
    /// Operad name: com, lie or pois.
    #[arg(long = "operad", alias = "name", value_name = "NAME")]
    pub name: Option<String>,
    #[arg(long)]
    pub n: Option<i64>,
    /// Operadic suspension applied to the operad.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub suspend: i64,
}

#[derive(Args, Debug, Clone)]
pub struct ModuleSel {
    /// Module kind: config, sphere (or sphere-diagonal), torus, operad.
    #[arg(long, value_name = "KIND")]
    pub kind: Option<String>,
    #[arg(long)]
    pub n: Option<i64>,
    /// Underlying operad for the kind `operad`.
    #[arg(long = "of", value_name = "OPERAD")]
    pub of: Option<String>,
    /// Module suspension s_(n,d), given as the pair n,d.
    #[arg(long, value_name = "N,D", value_parser = parse_pair, allow_hyphen_values = true)]
    pub shift: Option<(i64, i64)>,
    /// Restrict along a named morphism.
    #[arg(long, value_name = "MORPHISM")]
    pub along: Option<String>,
}

#[derive(Subcommand, Debug)]
enum OperadCmd {
    /// Poincare polynomial and basis in one arity.
    Show {
        /// Operad name, as an alternative to --name.
        #[arg(value_name = "NAME")]
        positional: Option<String>,
        #[command(flatten)]
        sel: OperadSel,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        basis: bool,
    },
    /// List the registered operads and morphisms.
    List,
}

#[derive(Subcommand, Debug)]
enum ModuleCmd {
    Show {
        #[command(flatten)]
        sel: ModuleSel,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        basis: bool,
    },
    /// Restriction along a morphism; shorthand for show --along.
    Restrict {
        #[command(flatten)]
        sel: ModuleSel,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        basis: bool,
    },
    List,
}

#[derive(Subcommand, Debug)]
enum BarCmd {
    /// Homology of the bar complex in one arity.
    Homology {
        /// Operad whose bar complex is taken.
        #[arg(long, value_name = "NAME", conflicts_with = "module")]
        operad: Option<String>,
        /// Module kind whose bar complex is taken.
        #[arg(long, value_name = "KIND")]
        module: Option<String>,
        #[arg(long)]
        n: Option<i64>,
        /// Operadic suspension of the operad.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        suspend: i64,
        /// Module suspension s_(n,d), given as the pair n,d.
        #[arg(long, value_name = "N,D", value_parser = parse_pair, allow_hyphen_values = true)]
        shift: Option<(i64, i64)>,
        #[arg(long = "of", value_name = "OPERAD")]
        of: Option<String>,
        #[arg(long, value_name = "MORPHISM")]
        along: Option<String>,
        #[arg(long)]
        arity: usize,
    },
}

#[derive(Subcommand, Debug)]
enum KoszulCmd {
    /// Compare bar homology of an operad with the suspended Koszul dual.
    Check {
        #[command(flatten)]
        op: OperadSel,
        /// Suspension degree of the dual; defaults to n.
        #[arg(long, allow_hyphen_values = true)]
        dual_shift: Option<i64>,
        #[arg(long, default_value_t = 2)]
        min_arity: usize,
        #[arg(long)]
        max_arity: usize,
    },
    /// Compare bar homology of a module with a suspended target module.
    CheckModule {
        /// Source module kind.
        #[arg(long)]
        module: String,
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        /// Target module kind; the configuration module by default.
        #[arg(long, default_value = "config")]
        target: String,
        #[arg(long, default_value_t = 1)]
        min_arity: usize,
        #[arg(long)]
        max_arity: usize,
    },
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected two integers separated by a comma")?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok((p(a)?, p(b)?))
}

pub struct Global {
    pub force: bool,
    pub prime: Option<u64>,
}

fn dispatch(cli: &Cli) -> opforge::Result<Report> {
    let g = Global { force: cli.force, prime: cli.prime };
    match &cli.command {
        Command::Operad(OperadCmd::Show { positional, sel, arity, basis }) => {
            let mut sel = sel.clone();
            if sel.name.is_none() {
                sel.name = positional.clone();
            }
            commands::operad_show(&g, &sel, *arity, *basis)
        }
        Command::Operad(OperadCmd::List) | Command::Module(ModuleCmd::List) => Ok(commands::list()),
        Command::Module(ModuleCmd::Show { sel, arity, basis }) => commands::module_show(&g, sel, *arity, *basis),
        Command::Module(ModuleCmd::Restrict { sel, arity, basis }) => {
            if sel.along.is_none() {
                return Err(opforge::Error::Argument("module restrict needs --along".into()));
            }
            let mut sel = sel.clone();
            sel.kind.get_or_insert_with(|| "config".into());
            commands::module_show(&g, &sel, *arity, *basis)
        }
        Command::Bar(BarCmd::Homology { operad, module, n, suspend, shift, of, along, arity }) => {
            if let Some(kind) = module {
                let sel = ModuleSel { kind: Some(kind.clone()), n: *n, of: of.clone(), shift: *shift, along: along.clone() };
                commands::bar_homology_module(&g, &sel, *arity)
            } else {
                let sel = OperadSel { name: operad.clone(), n: *n, suspend: *suspend };
                commands::bar_homology(&g, &sel, *arity)
            }
        }
        Command::Koszul(KoszulCmd::Check { op, dual_shift, min_arity, max_arity }) => {
            commands::koszul_check(&g, op, *dual_shift, *min_arity..=*max_arity)
        }
        Command::Koszul(KoszulCmd::CheckModule { module, n, d, target, min_arity, max_arity }) => {
            commands::koszul_check_module(&g, module, target, *n, *d, *min_arity..=*max_arity)
        }
        Command::Layers { n, k } => commands::layers(*n, *k),
        Command::Selftest { criterion } => commands::selftest(*criterion),
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("OPFORGE_THREADS") else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| format!("OPFORGE_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("OPFORGE_THREADS must be a positive integer".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if let Some(p) = cli.prime {
        if !opforge::exactla::is_prime(p) {
            eprintln!("error: --prime must be a prime, got {p}");
            return ExitCode::from(2);
        }
    }
    let format = match (&cli.json, &cli.csv) {
        (Some(path), _) => Format::Json(path.clone()),
        (_, Some(path)) => Format::Csv(path.clone()),
        _ => Format::Text,
    };
    match dispatch(&cli) {
        Ok(report) => match output::emit(&report, &format) {
            Ok(()) => ExitCode::from(if report.pass { 0 } else { 1 }),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                opforge::Error::Argument(_) | opforge::Error::Unsupported(_) => 2,
                opforge::Error::Structural(_) | opforge::Error::Audit(_) => 1,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        super::Cli::command().debug_assert();
    }
}
