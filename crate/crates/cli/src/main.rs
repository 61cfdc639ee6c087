use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use powerspec::check::{run_check, CheckConfig};
use powerspec::hypergraph::identities::RemovalMode;
use powerspec::hypergraph::{hypergraph_to_json, parse_hypergraph_file, write_hypergraph};
use powerspec::json::{
    eigenpair_from_json, eigenpair_to_json, root_classes_to_json, supplied_from_json,
    values_to_json, ReportJson,
};
use powerspec::plot::{root_class_series, value_series, write_plot};
use powerspec::power::{
    certify_spectrum, descend_eigenpair, lift_eigenpair, power_spectrum, PowerOptions,
    SuppliedSpectra,
};
use powerspec::spectral::{graph_spectrum, hopm_radius, spectrum_dedup};
use powerspec::tensor::verify_eigenpair;
use powerspec::{Complex64, Error, Result, Tolerances, UniformHypergraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Adjacency spectrum of a graph.
    Spectrum,
    /// k-expansion of the input.
    Expand,
    /// s-extension of the input.
    Extend,
    /// Generalized power H^k_s of the input.
    Power,
    /// Nonzero spectrum of H^k_s as root classes.
    PowerSpectrum,
    /// Check an eigenpair file against the input.
    Verify,
    /// Lift an eigenpair of the input to H^k_s.
    Lift,
    /// Recover an eigenpair of the input from one of H^k_s.
    Descend,
    /// Build and verify eigenpairs for every predicted class.
    Certify,
    /// Spectral radius by power iteration.
    Radius,
    /// Run the seeded property harness.
    Check,
    /// Plot the root classes of H^k_s.
    Plot,
}

/// Spectra of generalized power hypergraphs.
#[derive(Debug, Parser)]
#[command(name = "powerspec", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Hypergraph file: text (`r n m` header then one edge per line) or JSON.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Extension factor.
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Target uniformity.
    #[arg(long)]
    k: Option<usize>,
    /// Complex scalar as `RE,IM` or `RE`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    lambda: Option<Complex64>,
    /// Write JSON output here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write an SVG plot here.
    #[arg(long)]
    plot: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    tol_eig: Option<f64>,
    #[arg(long)]
    tol_zero: Option<f64>,
    #[arg(long)]
    tol_dedup: Option<f64>,
    /// Eigenpair JSON file for verify, lift and descend.
    #[arg(long)]
    eigenpair: Option<PathBuf>,
    /// Verified eigenpairs for subgraphs of uniformity three or more.
    #[arg(long)]
    supplied: Option<PathBuf>,
    /// Run the harness with isolated-vertex cleanup disabled.
    #[arg(long)]
    inject_fault: bool,
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| {
        t.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("not a finite number: {t:?}"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected RE,IM, got {s:?}")),
    }
}

impl Cli {
    fn tolerances(&self) -> Result<Tolerances> {
        let mut t = Tolerances::default();
        for (slot, v, name) in [
            (&mut t.eig, self.tol_eig, "--tol-eig"),
            (&mut t.zero, self.tol_zero, "--tol-zero"),
            (&mut t.dedup, self.tol_dedup, "--tol-dedup"),
        ] {
            if let Some(v) = v {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::Validation(format!("{name} must be positive")));
                }
                *slot = v;
            }
        }
        Ok(t)
    }

    fn need<T: Clone>(&self, v: &Option<T>, flag: &str) -> Result<T> {
        v.clone().ok_or_else(|| {
            let name = self.command.to_possible_value().expect("no skipped variants");
            Error::Validation(format!("{} needs {flag}", name.get_name()))
        })
    }

    /// Flag validation before any computation.
    fn validate(&self) -> Result<()> {
        use Command::*;
        self.tolerances()?;
        if self.s == 0 {
            return Err(Error::Validation("--s must be at least 1".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::Validation("--jobs must be at least 1".into()));
        }
        if self.command != Check {
            self.need(&self.input, "--input")?;
        }
        match self.command {
            Expand | Power | PowerSpectrum | Lift | Descend | Certify | Plot => {
                self.need(&self.k, "--k")?;
            }
            _ => {}
        }
        match self.command {
            Verify | Lift | Descend => {
                self.need(&self.eigenpair, "--eigenpair")?;
            }
            Plot => {
                self.need(&self.plot, "--plot")?;
            }
            Check if self.trials == 0 => {
                return Err(Error::Validation("--trials must be at least 1".into()));
            }
            _ => {}
        }
        if self.command == Lift {
            self.need(&self.lambda, "--lambda")?;
        }
        Ok(())
    }
}

fn emit_json(dest: &Path, text: &str) -> Result<()> {
    if dest == Path::new("-") {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.write_all(b"\n")?;
        Ok(())
    } else {
        fs::write(dest, format!("{text}\n")).map_err(Error::from)
    }
}

fn fmt_c(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.12}", z.re)
    } else {
        format!("{:.12}{:+.12}i", z.re, z.im)
    }
}

fn run(cli: &Cli) -> Result<()> {
    cli.validate()?;
    let tol = cli.tolerances()?;
    let input = || -> Result<UniformHypergraph> { parse_hypergraph_file(cli.input.as_ref().expect("validated")) };
    let supplied: Option<SuppliedSpectra> = match &cli.supplied {
        Some(p) => Some(supplied_from_json(&fs::read_to_string(p)?, &tol)?),
        None => None,
    };
    let opts = PowerOptions {
        tol,
        supplied: supplied.as_ref(),
    };
    let k = || cli.k.expect("validated");
    let read_pair = || -> Result<powerspec::Eigenpair> {
        eigenpair_from_json(&fs::read_to_string(cli.eigenpair.as_ref().expect("validated"))?)
    };

    match cli.command {
        Command::Spectrum => {
            let h = input()?;
            let sp = graph_spectrum(&h)?;
            for z in &sp.values {
                println!("{}", fmt_c(*z));
            }
            let set = spectrum_dedup(sp.values.iter().copied(), tol.dedup);
            if let Some(p) = &cli.json {
                emit_json(p, &values_to_json(&set)?)?;
            }
            if let Some(p) = &cli.plot {
                write_plot(p, &value_series(set.items(), "adjacency spectrum"), "adjacency spectrum")?;
            }
        }
        Command::Expand | Command::Extend | Command::Power => {
            let h = input()?;
            let out = match cli.command {
                Command::Expand => h.expand(k())?,
                Command::Extend => h.extend(cli.s)?,
                _ => h.generalized_power(cli.s, k())?,
            };
            print!("{}", write_hypergraph(&out));
            if let Some(p) = &cli.json {
                emit_json(p, &hypergraph_to_json(&out))?;
            }
        }
        Command::PowerSpectrum | Command::Certify => {
            let h = input()?;
            let started = Instant::now();
            let rep = certify_spectrum(&h, cli.s, k(), &opts)?;
            let res = &rep.spectrum;
            println!(
                "r={} s={} k={} mode={} classes={} certified={}/{} ({:.3}s)",
                res.r,
                res.s,
                res.k,
                res.mode,
                res.classes.len(),
                rep.certified_count(),
                rep.classes.len(),
                started.elapsed().as_secs_f64()
            );
            for c in &rep.classes {
                print!(
                    "  λ^{} = {}  witness {} β = {}  {}",
                    c.class.order,
                    fmt_c(c.class.base),
                    c.witness.subgraph,
                    fmt_c(c.witness.beta),
                    if c.certified { "certified" } else { "NOT certified" }
                );
                if cli.command == Command::Certify {
                    let worst = c.members.iter().map(|m| m.pair.residual).fold(0.0, f64::max);
                    print!("  members {}/{} max residual {:.2e}", c.members.len(), c.class.order, worst);
                    if let Some(f) = &c.failure {
                        print!("  ({f})");
                    }
                }
                println!();
            }
            if let Some(lambda) = cli.lambda {
                let m = res.membership(lambda)?;
                match (m.holds, m.witness) {
                    (true, Some(w)) => println!(
                        "{} is an eigenvalue: witness {} with β = {}",
                        fmt_c(lambda),
                        w.subgraph,
                        fmt_c(w.beta)
                    ),
                    _ => println!("{} is not an eigenvalue", fmt_c(lambda)),
                }
            }
            if let Some(p) = &cli.json {
                emit_json(p, &ReportJson::new(res, Some(&rep)).to_json()?)?;
            }
            if let Some(p) = &cli.plot {
                write_plot(p, &root_class_series(&res.root_classes()), "root classes")?;
            }
            if cli.command == Command::Certify {
                if let Some(c) = rep.classes.iter().find(|c| !c.certified) {
                    return Err(c.error.clone().unwrap_or_else(|| {
                        Error::PreconditionViolated(c.failure.clone().unwrap_or_default())
                    }));
                }
            }
        }
        Command::Verify => {
            let h = input()?;
            let p = read_pair()?;
            let lambda = cli.lambda.unwrap_or(p.lambda);
            let v = verify_eigenpair(&h, lambda, &p.vector, &tol)?;
            println!("verified: λ = {} residual {:.3e}", fmt_c(v.lambda), v.residual);
            if let Some(o) = &cli.json {
                emit_json(o, &eigenpair_to_json(&v)?)?;
            }
        }
        Command::Lift => {
            let h = input()?;
            let base = read_pair()?;
            let lambda = cli.lambda.expect("validated");
            let p = lift_eigenpair(&h, cli.s, k(), base.lambda, &base.vector, lambda, &tol)?;
            println!("lifted: λ = {} residual {:.3e}", fmt_c(p.lambda), p.residual);
            emit_json(cli.json.as_deref().unwrap_or(Path::new("-")), &eigenpair_to_json(&p)?)?;
        }
        Command::Descend => {
            let h = input()?;
            let hks = h.generalized_power(cli.s, k())?;
            let p = read_pair()?;
            let b = descend_eigenpair(&h, &hks, &p, &tol)?;
            println!("descended: β = {} residual {:.3e}", fmt_c(b.lambda), b.residual);
            emit_json(cli.json.as_deref().unwrap_or(Path::new("-")), &eigenpair_to_json(&b)?)?;
        }
        Command::Radius => {
            let h = input()?;
            println!("{:.12}", hopm_radius(&h)?);
        }
        Command::Check => {
            let cfg = CheckConfig {
                seed: cli.seed,
                trials: cli.trials,
                removal: if cli.inject_fault {
                    RemovalMode::SkipIsolatedCleanup
                } else {
                    RemovalMode::Exact
                },
                tol,
                ..Default::default()
            };
            let rep = run_check(&cfg)?;
            print!("{rep}");
            println!("all properties passed");
        }
        Command::Plot => {
            let h = input()?;
            let res = power_spectrum(&h, cli.s, k(), &opts)?;
            let dest = cli.plot.as_ref().expect("validated");
            write_plot(dest, &root_class_series(&res.root_classes()), "root classes")?;
            if let Some(p) = &cli.json {
                emit_json(p, &root_classes_to_json(&res.root_classes())?)?;
            }
            println!("wrote {}", dest.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j > 0 {
            // a second initialization only happens in tests; ignore it
            let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
