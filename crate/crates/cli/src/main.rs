use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use sumfree::claims::{self, ClaimOutcome};
use sumfree::flats::{find_vanishing_flat, order_profile_in};
use sumfree::gf2n::parse_hex;
use sumfree::grassmann::{chromatic_lower_bound, extended_coloring, verify_coloring, witness_coloring};
use sumfree::io::{read_catalog, read_certificate, read_function_with_modulus, read_matrix, write_certificate, write_function};
use sumfree::rmcode::{rm_generator, rm_parity_check};
use sumfree::search::{carlet_exponent, carlet_function, exhaustive_nonexistence, gold_inverse_check, profile_catalog, Nonexistence};
use sumfree::subcode::{build_subcode, certify_min_distance, extract_function, min_distance_exhaustive, BuildOptions};
use sumfree::{BinaryCode, FieldContext, GrassmannParams, RunConfig, VectorialFunction};

/// Sum-free vectorial Boolean functions, Reed-Muller subcodes and Grassmann colorings.
///
/// Caps and the sampling seed can be overridden with SUMFREE_FLAT_CAP,
/// SUMFREE_CODEWORD_DIM_CAP, SUMFREE_NODE_CAP, SUMFREE_SEARCH_CAP,
/// SUMFREE_JOBS and SUMFREE_SEED.
#[derive(Parser)]
#[command(name = "sumfree", version)]
struct Cli {
    /// Worker threads (overrides SUMFREE_JOBS).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Field modulus as hex, e.g. 0x25 for n=5. Used wherever a field is implied.
    #[arg(long, global = true, value_parser = hex_arg)]
    modulus: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

fn hex_arg(s: &str) -> std::result::Result<u32, String> {
    parse_hex(s).ok_or_else(|| format!("{s:?} is not a hex integer"))
}

#[derive(Subcommand)]
enum Cmd {
    /// Finite field information.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Inspect a function file.
    #[command(subcommand, name = "fn")]
    Func(FnCmd),
    /// Check kth-order sum-freedom.
    Check(CheckArgs),
    /// Reed-Muller matrices.
    #[command(subcommand)]
    Rm(RmCmd),
    /// Subcodes of RM(r,n) defined by sum-free functions.
    #[command(subcommand)]
    Subcode(SubcodeCmd),
    /// Grassmann graph colorings.
    #[command(subcommand)]
    Grassmann(GrassmannCmd),
    /// Function families, catalog profiling and exhaustive searches.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Run named reproduction claims.
    Reproduce(ReproduceArgs),
}

#[derive(Subcommand)]
enum FieldCmd {
    Info {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum FnCmd {
    /// Algebraic degree.
    Degree(InputArg),
    /// Nonzero ANF monomials as `<monomial-hex> <coeff-hex>`.
    Anf(InputArg),
    /// Degree of every nonzero component v·F.
    Components(InputArg),
}

#[derive(Args)]
struct InputArg {
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, required_unless_present = "all_k")]
    k: Option<u32>,
    /// Check every order 1..=n and print the profile.
    #[arg(long)]
    all_k: bool,
}

#[derive(Subcommand)]
enum RmCmd {
    /// Generator matrix of RM(r,n).
    Gen(RmArgs),
    /// Parity-check matrix of RM(r,n), i.e. a generator of RM(n-r-1,n).
    Pcheck(RmArgs),
}

#[derive(Args)]
struct RmArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SubcodeCmd {
    /// Generator matrix of C_F.
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the parity-check matrix [RM parity check; M_F].
        #[arg(long)]
        pcheck_out: Option<PathBuf>,
        /// Skip the sum-freedom and non-degeneracy checks.
        #[arg(long)]
        trust: bool,
    },
    /// Minimum distance of a code.
    Mindist {
        #[arg(long)]
        gen: PathBuf,
        #[arg(long, conflicts_with = "certify")]
        exhaustive: bool,
        /// Certify via the defining function instead of enumerating.
        #[arg(long, requires_all = ["input", "r"])]
        certify: bool,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        r: Option<u32>,
    },
    /// Recover F from a parity-check matrix of C_F.
    Extract {
        #[arg(long)]
        pcheck: PathBuf,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Witness,
    Extended,
}

#[derive(Subcommand)]
enum GrassmannCmd {
    /// Color J_2(n,k) (witness) or J_2(n+1,k) (extended) from a function.
    Color {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "witness")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a coloring certificate.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Vertex count and chromatic number lower bound of J_2(n,k,t).
    Bounds {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: Option<u32>,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// The power map x^(sum of 2^(ij), i<k).
    Carlet {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        j: u32,
        /// Allow j with gcd(j,n) != 1.
        #[arg(long)]
        any_j: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inverse of a Gold function for odd n.
    GoldInverse {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u32,
    },
    /// Order profiles of every function in a catalog.
    Catalog {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        kmin: u32,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exhaustive search for a kth-order sum-free (n,m)-function.
    Nonexist {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        /// Node budget (defaults to SUMFREE_NODE_CAP).
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args)]
struct ReproduceArgs {
    /// Claim id; see --list.
    #[arg(required_unless_present_any = ["all", "list"], conflicts_with = "all")]
    id: Option<String>,
    /// Run every claim tied to an acceptance criterion.
    #[arg(long)]
    all: bool,
    /// List claim ids and exit.
    #[arg(long)]
    list: bool,
    /// Write the report lines to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Directory for artifacts (certificates, matrices).
    #[arg(long)]
    artifacts: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let res = run(cli, &mut out);
    // A closed pipe (e.g. `| head`) is not an error.
    if let Err(e) = std::io::stdout().write_all(out.as_bytes()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(o: &mut String, out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            write!(o, "{text}")?;
            Ok(())
        }
    }
}

fn field(n: u32, modulus: Option<u32>) -> Result<FieldContext> {
    Ok(match modulus {
        Some(p) => FieldContext::new(n, p)?,
        None => FieldContext::with_default_modulus(n)?,
    })
}

fn degree_str(d: Option<u32>) -> String {
    d.map_or("-inf".to_string(), |d| d.to_string())
}

/// Returns `Ok(false)` for a completed run whose verdict is negative.
fn run(cli: Cli, o: &mut String) -> Result<bool> {
    let mut cfg = RunConfig::from_env()?;
    if let Some(j) = cli.jobs {
        cfg.jobs = j;
    }
    let modulus = cli.modulus;
    let load = |p: &Path| -> Result<VectorialFunction> {
        read_function_with_modulus(p, modulus).with_context(|| format!("reading {}", p.display()))
    };

    match cli.cmd {
        Cmd::Field(FieldCmd::Info { n }) => {
            let ctx = field(n, modulus)?;
            writeln!(o, "degree={} modulus={:#x} generator={:#x}", ctx.n(), ctx.modulus(), ctx.generator())?;
        }

        Cmd::Func(cmd) => match cmd {
            FnCmd::Degree(a) => {
                let f = load(&a.input)?;
                writeln!(o, "{}", degree_str(f.algebraic_degree()))?;
            }
            FnCmd::Anf(a) => {
                let f = load(&a.input)?;
                let anf = f.anf();
                for u in anf.monomials() {
                    writeln!(o, "{u:x} {:x}", anf.packed()[u as usize])?;
                }
            }
            FnCmd::Components(a) => {
                let f = load(&a.input)?;
                let anf = f.anf();
                for v in 1..1u32 << f.m() {
                    writeln!(o, "v={v:x} degree={}", degree_str(anf.component_degree(v)))?;
                }
            }
        },

        Cmd::Check(a) => {
            let f = load(&a.input)?;
            if a.all_k {
                let p = order_profile_in(&f, 1..=f.n(), &cfg)?;
                for k in 1..=f.n() {
                    writeln!(o, "k={k} {}", if p.contains(k) { "PASS" } else { "FAIL" })?;
                }
                writeln!(o, "orders={:?}", p.orders)?;
                return Ok(true);
            }
            let k = a.k.expect("clap enforces --k");
            return Ok(match find_vanishing_flat(&f, k, &cfg)? {
                None => {
                    writeln!(o, "PASS")?;
                    true
                }
                Some(flat) => {
                    writeln!(o, "FAIL {flat}")?;
                    false
                }
            });
        }

        Cmd::Rm(cmd) => {
            let (m, out) = match cmd {
                RmCmd::Gen(a) => (rm_generator(a.r, a.n)?, a.out),
                RmCmd::Pcheck(a) => (rm_parity_check(a.r, a.n)?, a.out),
            };
            emit(o, out.as_deref(), &m.to_text())?;
        }

        Cmd::Subcode(cmd) => match cmd {
            SubcodeCmd::Build { input, r, out, pcheck_out, trust } => {
                let f = load(&input)?;
                let b = build_subcode(&f, r, BuildOptions { trust }, &cfg)?;
                emit(o, out.as_deref(), &b.code.generator().to_text())?;
                if let Some(p) = pcheck_out {
                    emit(o, Some(&p), &b.code.parity_check().to_text())?;
                }
                if out.is_some() {
                    writeln!(o, "length={} dimension={} designed_distance={}", b.code.length(), b.code.dimension(), b.designed_distance())?;
                }
            }
            SubcodeCmd::Mindist { gen, certify, input, r, .. } => {
                let code = BinaryCode::from_generator(read_matrix(&gen)?);
                if certify {
                    let (input, r) = (input.expect("clap"), r.expect("clap"));
                    let b = build_subcode(&load(&input)?, r, BuildOptions::default(), &cfg)?;
                    if b.code.dimension() != code.dimension() || !b.code.generator().iter_rows().all(|row| code.contains(row)) {
                        bail!("{} does not generate C_F for {}", gen.display(), input.display());
                    }
                    let cert = certify_min_distance(&b, &cfg)?;
                    writeln!(o, "{cert}")?;
                    return Ok(cert.is_tight());
                }
                writeln!(o, "{}", min_distance_exhaustive(&code, &cfg)?)?;
            }
            SubcodeCmd::Extract { pcheck, r, out } => {
                let code = BinaryCode::from_parity_check(read_matrix(&pcheck)?);
                let b = extract_function(&code, r)?;
                emit(o, out.as_deref(), &write_function(&b.function))?;
            }
        },

        Cmd::Grassmann(cmd) => match cmd {
            GrassmannCmd::Color { input, k, mode, out } => {
                let f = load(&input)?;
                let cert = match mode {
                    Mode::Witness => witness_coloring(&f, k, &cfg)?,
                    Mode::Extended => extended_coloring(&f, k, &cfg)?,
                };
                emit(o, out.as_deref(), &write_certificate(&cert))?;
                if out.is_some() {
                    writeln!(o, "{} vertices={} colors={}", cert.params(), cert.colors().len(), cert.colors_used())?;
                }
            }
            GrassmannCmd::Verify { cert } => {
                let c = read_certificate(&cert)?;
                let rep = verify_coloring(&c, &cfg)?;
                writeln!(o, "{} {rep}", c.params())?;
                return Ok(rep.valid && rep.extended.as_ref().is_none_or(|e| e.failures == 0));
            }
            GrassmannCmd::Bounds { n, k, t } => {
                let t = t.unwrap_or(k.saturating_sub(1));
                let p = GrassmannParams::new(n, k, t)?;
                writeln!(o, "{p} vertices={} chromatic_lower_bound={}", p.vertex_count(), chromatic_lower_bound(n, k, t)?)?;
            }
        },

        Cmd::Search(cmd) => match cmd {
            SearchCmd::Carlet { n, k, j, any_j, out } => {
                let ctx = field(n, modulus)?;
                let f = carlet_function(&ctx, k, j, any_j)?;
                let ok = find_vanishing_flat(&f, k, &cfg)?.is_none();
                writeln!(o, "exponent={} order={k} {}", carlet_exponent(n, k, j), if ok { "PASS" } else { "FAIL" })?;
                if let Some(p) = out {
                    emit(o, Some(&p), &write_function(&f))?;
                }
                return Ok(ok);
            }
            SearchCmd::GoldInverse { n, i } => {
                let rep = gold_inverse_check(&field(n, modulus)?, i, &cfg)?;
                writeln!(o, "{rep} {}", if rep.passed() { "PASS" } else { "FAIL" })?;
                return Ok(rep.passed());
            }
            SearchCmd::Catalog { file, kmin, kmax, report } => {
                let cat = read_catalog(&file)?;
                let kmax = kmax.unwrap_or_else(|| cat.entries().first().map_or(kmin, |e| e.function.n()));
                let rep = profile_catalog(&cat, kmin, kmax, &cfg)?;
                emit(o, report.as_deref(), &rep.to_string())?;
            }
            SearchCmd::Nonexist { n, m, k, budget } => {
                return Ok(match exhaustive_nonexistence(n, m, k, budget.unwrap_or(cfg.node_cap))? {
                    Nonexistence::Exists(f) => {
                        writeln!(o, "EXISTS")?;
                        write!(o, "{}", write_function(&f))?;
                        true
                    }
                    Nonexistence::Nonexistent { nodes } => {
                        writeln!(o, "NONEXISTENT nodes={nodes}")?;
                        true
                    }
                    Nonexistence::BudgetExhausted { nodes } => {
                        writeln!(o, "INCONCLUSIVE nodes={nodes}")?;
                        false
                    }
                });
            }
        },

        Cmd::Reproduce(a) => {
            if a.list {
                for c in claims::CLAIMS {
                    let crit = c.criterion.map_or("-".to_string(), |n| n.to_string());
                    writeln!(o, "{:<20} {:>2}  {}", c.id, crit, c.summary)?;
                }
                return Ok(true);
            }
            let outcomes: Vec<ClaimOutcome> = if a.all {
                claims::reproduce_all(&cfg)
            } else {
                vec![claims::reproduce(a.id.as_deref().expect("clap"), &cfg)?]
            };
            let mut text = String::new();
            for o in &outcomes {
                text.push_str(&format!("{o}\n"));
            }
            write!(o, "{text}")?;
            if let Some(p) = &a.report {
                fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
            }
            if let Some(dir) = &a.artifacts {
                fs::create_dir_all(dir)?;
                for (name, body) in outcomes.iter().flat_map(|o| &o.artifacts) {
                    fs::write(dir.join(name), body)?;
                }
            }
            return Ok(outcomes.iter().all(|o| o.pass));
        }
    }
    Ok(true)
}
