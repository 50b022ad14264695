mod config;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use ordforge::calculus::{CodedFamily, Ctx};
use ordforge::catalog::resolve_system;
use ordforge::derivation::{local_check, Certificate, Derivation};
use ordforge::lifting::{check_indiscernibility, lift, BaseMap};
use ordforge::order::parse_order_file;
use ordforge::search::{build_search_tree, SearchConfig};
use ordforge::takeuti::{takeuti_extract, PrgLadder};
use ordforge::ti::{build_ti_derivation, ti_bound, tier1, Dilation};
use ordforge::welim::{cut_bound, w_eliminate, GPrime};
use ordforge::{enumerate, fixtures, make_exponential, suite, CodedOrder, NotationSystem, Term};

use config::Budgets;

/// Relativized ordinal notations and ω-logic certificates.
#[derive(Parser)]
#[command(name = "ordforge", version)]
struct Cli {
    /// Order file(s) whose orders can be named in `<recipe>@<order>` systems.
    #[arg(long = "orders", global = true)]
    orders: Vec<PathBuf>,
    /// Only print the verdict line where a command has one.
    #[arg(short, long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Budget {
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    width: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compare two terms and print both normal forms.
    Compare {
        #[arg(long)]
        system: String,
        a: String,
        b: String,
    },
    /// Print the normal form of each term.
    Normalize {
        #[arg(long)]
        system: String,
        terms: Vec<String>,
    },
    /// List all normal forms up to a size, increasing.
    Enumerate {
        #[arg(long)]
        system: String,
        #[arg(long)]
        size: usize,
        /// Prefix of the base field used when it is infinite.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Push terms along an order-preserving base map.
    Lift {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Map file with one `n -> m` per line.
        #[arg(long)]
        map: PathBuf,
        terms: Vec<String>,
    },
    /// Check that comparison ignores everything but the order type of constants.
    IndiscCheck {
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 2)]
        width: usize,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Build the canonical search tree for a family and print its certificate.
    Search {
        /// Shipped fixture name or path to a family file.
        #[arg(long)]
        family: String,
        #[command(flatten)]
        budget: Budget,
        /// Also write the fairness sidecar here.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Locally check a derivation certificate.
    Check {
        cert: PathBuf,
        #[command(flatten)]
        budget: Budget,
    },
    /// Extract the order embedding from a derivation of ∀x E_i(x).
    Takeuti {
        cert: PathBuf,
        #[arg(long, default_value_t = 0)]
        index: u64,
        /// Bound on the root ord; defaults to the certificate's root ord.
        #[arg(long)]
        root: Option<String>,
        #[arg(long, default_value_t = 64)]
        limit: usize,
    },
    /// Build the transfinite-induction derivation for a family slot.
    TiBuild {
        /// Defaults to the family of `--from`.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 0)]
        index: u64,
        /// Derivation of ∀x E_i(x) to extract from; a Prg ladder otherwise.
        #[arg(long)]
        from: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Eliminate (W) inferences from a certificate.
    Weliminate {
        cert: PathBuf,
        #[command(flatten)]
        budget: Budget,
    },
    /// Evaluate the cut bound over a chain Λ and test it against g′(b).
    CutBound {
        /// Size of the chain Λ.
        #[arg(long, default_value_t = 3)]
        lam: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        b: Option<u64>,
    },
    /// Run a named acceptance suite, or `all`.
    Suite { name: String },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_family(name: &str) -> Result<CodedFamily> {
    if fixtures::names().contains(&name) {
        return Ok(fixtures::family(name)?);
    }
    Ok(CodedFamily::parse(&read(Path::new(name))?)?)
}

fn load_cert(path: &Path) -> Result<Certificate> {
    Certificate::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

struct App {
    orders: Vec<CodedOrder>,
    budgets: Budgets,
    quiet: bool,
    out: std::io::StdoutLock<'static>,
}

impl App {
    fn system(&self, name: &str) -> Result<NotationSystem> {
        Ok(resolve_system(name, &self.orders)?)
    }

    fn budget(&self, b: &Budget) -> (usize, u64) {
        (
            b.depth.unwrap_or(self.budgets.depth),
            b.width.unwrap_or(self.budgets.width),
        )
    }

    fn run(&mut self, cmd: Cmd) -> Result<bool> {
        match cmd {
            Cmd::Compare { system, a, b } => {
                let s = self.system(&system)?;
                let (ta, tb) = (s.parse(&a)?, s.parse(&b)?);
                let c = s.compare(&ta, &tb)?;
                writeln!(self.out, "{c:?}")?;
                if !self.quiet {
                    writeln!(self.out, "a = {}", s.show(&s.normalize(&ta)?))?;
                    writeln!(self.out, "b = {}", s.show(&s.normalize(&tb)?))?;
                }
            }
            Cmd::Normalize { system, terms } => {
                let s = self.system(&system)?;
                for t in terms {
                    writeln!(self.out, "{}", s.show(&s.normalize(&s.parse(&t)?)?))?;
                }
            }
            Cmd::Enumerate {
                system,
                size,
                bound,
            } => {
                if size > self.budgets.term_size {
                    bail!(
                        "size {size} exceeds the term-size cap {}",
                        self.budgets.term_size
                    );
                }
                let s = self.system(&system)?;
                for t in enumerate(&s, size, bound.unwrap_or(self.budgets.base_size))? {
                    writeln!(self.out, "{}", s.show(&t))?;
                }
            }
            Cmd::Lift {
                from,
                to,
                map,
                terms,
            } => {
                let (s, s2) = (self.system(&from)?, self.system(&to)?);
                let f = BaseMap::parse(&read(&map)?)?;
                f.check_order_preserving(s.base(), s2.base())?;
                for t in terms {
                    let image = s2.normalize(&lift(&f, &s.normalize(&s.parse(&t)?)?)?)?;
                    writeln!(self.out, "{}", s2.show(&image))?;
                }
            }
            Cmd::IndiscCheck {
                system,
                width,
                size,
                bound,
            } => {
                let s = self.system(&system)?;
                let size = size.unwrap_or(self.budgets.term_size.min(4));
                let bound = bound.unwrap_or(self.budgets.base_size);
                let found = check_indiscernibility(&s, width, size, bound)?;
                if !self.quiet {
                    for v in &found {
                        writeln!(self.out, "{v}")?;
                    }
                }
                writeln!(self.out, "{} violations", found.len())?;
                return Ok(found.is_empty());
            }
            Cmd::Search {
                family,
                budget,
                sidecar,
            } => {
                let (depth, width) = self.budget(&budget);
                let t = build_search_tree(
                    &Ctx::new(load_family(&family)?),
                    &SearchConfig::new(depth, width),
                )?;
                if let Some(p) = sidecar {
                    fs::write(&p, t.sidecar())
                        .with_context(|| format!("writing {}", p.display()))?;
                }
                write!(self.out, "{}", t.certificate())?;
            }
            Cmd::Check { cert, budget } => {
                let (depth, width) = self.budget(&budget);
                let c = load_cert(&cert)?;
                let found = local_check(&c, depth, width);
                if !self.quiet {
                    for v in &found {
                        writeln!(self.out, "{v}")?;
                    }
                }
                let verdict = if found.is_empty() { "ok" } else { "rejected" };
                writeln!(self.out, "{verdict}: {} ({} nodes)", c.name, c.nodes.len())?;
                return Ok(found.is_empty());
            }
            Cmd::Takeuti {
                cert,
                index,
                root,
                limit,
            } => {
                let c = load_cert(&cert)?;
                let b = c.bound().clone();
                let root = match root {
                    Some(r) => b.normalize(&b.parse(&r)?)?,
                    None => c.root()?.ord.clone(),
                };
                let e = takeuti_extract(&c, index, &root, limit)?;
                for n in e.prec.sorted_field()? {
                    writeln!(
                        self.out,
                        "{n}\t{}\t{}",
                        b.show(&e.graph[&n]),
                        b.show(&e.beta[&n])
                    )?;
                }
            }
            Cmd::TiBuild {
                family,
                index,
                from,
                budget,
            } => {
                let (depth, width) = self.budget(&budget);
                let given = family.as_deref().map(load_family).transpose()?;
                let (ctx, e) = match from {
                    Some(p) => {
                        let c = load_cert(&p)?;
                        if let Some(q) = &given {
                            if q.order(index).to_file_string()
                                != c.ctx.q.order(index).to_file_string()
                            {
                                bail!(
                                    "slot {index} of the family differs from the one in {}",
                                    p.display()
                                );
                            }
                        }
                        let root = c.root()?.ord.clone();
                        let e = takeuti_extract(&c, index, &root, 64)?;
                        (c.ctx.clone(), e)
                    }
                    None => {
                        let q = given.context("ti-build needs --family or --from")?;
                        let ctx = Ctx::new(q);
                        let bound = make_exponential(CodedOrder::empty("e"));
                        let lad = PrgLadder::new(ctx.clone(), index, bound, false)?;
                        let e = takeuti_extract(&lad, index, &lad.root_ord(), 64)?;
                        (ctx, e)
                    }
                };
                let bound = ti_bound(&ctx, None, &CodedOrder::chain("lam", 1))?;
                let dil = Dilation::new(ctx.system(index, None)?, bound.clone(), &e)?;
                let beta0 = bound.normalize(&tier1(0)?)?;
                let d = build_ti_derivation(&ctx, index, None, dil, &beta0, Default::default())?;
                write!(self.out, "{}", Certificate::truncate(&d, depth, width)?)?;
            }
            Cmd::Weliminate { cert, budget } => {
                let (depth, width) = self.budget(&budget);
                let out = w_eliminate(&load_cert(&cert)?, depth, width)?;
                write!(self.out, "{out}")?;
            }
            Cmd::CutBound { lam, k, c, d, b } => {
                let ctx = Ctx::new(CodedFamily::new());
                let gp = GPrime::for_input(&ctx, &make_exponential(CodedOrder::chain("lam", lam)))?;
                let beta0 = gp.apply(&Term::c(c))?;
                let v = cut_bound(k, &beta0, &Term::c(d), &gp)?;
                writeln!(self.out, "{}", gp.bound.show(&v))?;
                if let Some(b) = b {
                    let top = gp.apply(&Term::c(b))?;
                    let below = gp.bound.lt(&v, &top)?;
                    writeln!(self.out, "below g'({b}) = {}: {below}", gp.bound.show(&top))?;
                    return Ok(below);
                }
            }
            Cmd::Suite { name } => {
                let names: Vec<&str> = if name == "all" {
                    suite::NAMES.to_vec()
                } else {
                    vec![&name]
                };
                let mut ok = true;
                for n in names {
                    let r = suite::run(n)?;
                    ok &= r.passed();
                    if self.quiet {
                        writeln!(
                            self.out,
                            "suite {n}: {}",
                            if r.passed() { "pass" } else { "fail" }
                        )?;
                    } else {
                        writeln!(self.out, "{r}")?;
                    }
                }
                return Ok(ok);
            }
        }
        Ok(true)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let setup = || -> Result<App> {
        let mut orders = Vec::new();
        for p in &cli.orders {
            orders.extend(parse_order_file(&read(p)?)?);
        }
        Ok(App {
            orders,
            budgets: Budgets::from_env()?,
            quiet: cli.quiet,
            out: std::io::stdout().lock(),
        })
    };
    match setup().and_then(|mut app| app.run(cli.cmd)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
