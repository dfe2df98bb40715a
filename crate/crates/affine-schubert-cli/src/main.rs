//! Command-line surface for affine Schubert smoothness computations.

use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use affine_schubert::bruhat;
use affine_schubert::enumerate;
use affine_schubert::patterns::{self, Pattern};
use affine_schubert::pictures::{self, Viewport};
use affine_schubert::smoothness::{self, Verdict};
use affine_schubert::witness;
use affine_schubert::{AffinePermutation, Error};

#[derive(Parser)]
#[command(
    name = "affine-schubert",
    about = "Rational smoothness of affine Schubert varieties: classification, \
             Poincaré polynomials, Bruhat order, patterns, witnesses, pictures \
             and enumeration",
    version
)]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Cache directory for Poincaré polynomial files
    #[arg(long, global = true, default_value = "cache")]
    cache_dir: PathBuf,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Element budget for poset traversals and enumeration
    #[arg(long, global = true, default_value_t = bruhat::DEFAULT_IDEAL_CAP)]
    max_elements: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WindowArg {
    /// Period of the affine permutation
    #[arg(long)]
    n: usize,
    /// Base window, comma-separated (e.g. "8,3,1,0,4,5")
    #[arg(long, allow_hyphen_values = true)]
    window: String,
}

impl WindowArg {
    fn parse(&self) -> Result<AffinePermutation, Error> {
        let w = AffinePermutation::from_str(&self.window)?;
        if w.n() != self.n {
            return Err(Error::BadArity {
                n: self.n,
                got: w.n(),
            });
        }
        Ok(w)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide rational smoothness, with pattern evidence on failure
    Classify {
        /// Period of the affine permutation
        #[arg(long)]
        n: Option<usize>,
        /// Base window, comma-separated (e.g. "8,1,3,5,4,0")
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Read windows line by line from a file ("-" for stdin) and emit
        /// one JSON verdict per line
        #[arg(long)]
        batch: Option<String>,
    },
    /// Poincaré polynomial of the order ideal
    Poincare {
        #[command(flatten)]
        window: WindowArg,
        /// bfs: graded traversal of the ideal; factor: repeated
        /// factorization (avoiders only)
        #[arg(long, default_value = "bfs")]
        method: String,
    },
    /// Reflections t with x < x t <= w
    Rset {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Covering relations below an element
    Covers {
        #[command(flatten)]
        window: WindowArg,
    },
    /// Order ideal size and rank profile
    Ideal {
        #[command(flatten)]
        window: WindowArg,
    },
    /// Search for a classical pattern occurrence
    Pattern {
        #[command(flatten)]
        window: WindowArg,
        /// Digit string, e.g. 3412
        #[arg(long)]
        pattern: String,
    },
    /// One factorization step w = w' sigma
    Psi {
        #[command(flatten)]
        window: WindowArg,
    },
    /// Construct a twisted spiral (--i, --k) or recognize one (--window)
    Spiral {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
    /// Produce verified non-smoothness evidence
    Witness {
        #[command(flatten)]
        window: WindowArg,
    },
    /// Render the Bruhat picture of a pair as SVG
    Picture {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        /// Output file
        #[arg(long)]
        out: PathBuf,
        /// First column of the viewport
        #[arg(long, allow_hyphen_values = true)]
        from: Option<i64>,
        /// Last column of the viewport
        #[arg(long, allow_hyphen_values = true)]
        to: Option<i64>,
    },
    /// Enumerate the group by length; count avoiders
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_length: Option<usize>,
        /// Count elements avoiding both 3412 and 4231
        #[arg(long)]
        count_avoiders: bool,
        /// Count 3412-avoiders within --max-length
        #[arg(long)]
        count_3412: bool,
        /// Allow the long n = 6 avoider run
        #[arg(long)]
        long: bool,
    },
    /// Exhaustively check the classifier against palindromicity
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_length: usize,
    },
    /// Build or verify the Poincaré polynomial cache
    Cache {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_length: Option<usize>,
        /// Recompute every cached record and require identical bits
        #[arg(long)]
        verify_cache: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: cannot configure {jobs} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CapacityExceeded(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let cap = cli.max_elements;
    let mut stdout = std::io::stdout().lock();
    match &cli.command {
        Command::Classify { n, window, batch } => match (n, window, batch) {
            (_, _, Some(path)) => classify_batch(path, &mut stdout),
            (Some(n), Some(win), None) => {
                let w = parse_window(*n, win)?;
                let verdict = smoothness::classify(&w);
                print_verdict(&w, &verdict, cli.json, &mut stdout)
            }
            _ => Err(Error::InvalidArgs(
                "classify needs --n with --window, or --batch".into(),
            )),
        },
        Command::Poincare { window, method } => {
            let w = window.parse()?;
            let p = match method.as_str() {
                "bfs" => bruhat::poincare_capped(&w, cap)?,
                "factor" => smoothness::poincare_factored(&w)?,
                other => {
                    return Err(Error::InvalidArgs(format!(
                        "unknown method {other:?}; use bfs or factor"
                    )))
                }
            };
            if cli.json {
                let rec = bruhat::PoincareRecord::new(&w, &p);
                writeln!(stdout, "{}", serde_json::to_string(&rec).unwrap())?;
            } else {
                writeln!(stdout, "{p}")?;
                writeln!(
                    stdout,
                    "degree {} palindromic {}",
                    p.degree().unwrap_or(0),
                    p.is_palindromic()
                )?;
            }
            Ok(())
        }
        Command::Rset { n, x, w } => {
            let x = parse_window(*n, x)?;
            let w = parse_window(*n, w)?;
            let rset = bruhat::reflection_set(&x, &w)?;
            if cli.json {
                let list: Vec<_> = rset.iter().map(|t| json!([t.i(), t.j()])).collect();
                writeln!(
                    stdout,
                    "{}",
                    json!({"count": rset.len(), "reflections": list})
                )?;
            } else {
                writeln!(stdout, "{} reflections", rset.len())?;
                for t in rset {
                    writeln!(stdout, "{t}")?;
                }
            }
            Ok(())
        }
        Command::Covers { window } => {
            let w = window.parse()?;
            let covers = bruhat::covers_down(&w);
            if cli.json {
                let list: Vec<_> = covers
                    .iter()
                    .map(|(t, u)| json!({"t": [t.i(), t.j()], "window": u.window()}))
                    .collect();
                writeln!(stdout, "{}", json!({"count": list.len(), "covers": list}))?;
            } else {
                writeln!(stdout, "{} covers", covers.len())?;
                for (t, u) in covers {
                    writeln!(stdout, "{t} -> {u}")?;
                }
            }
            Ok(())
        }
        Command::Ideal { window } => {
            let w = window.parse()?;
            let p = bruhat::poincare_capped(&w, cap)?;
            if cli.json {
                writeln!(
                    stdout,
                    "{}",
                    json!({"size": p.eval_one().to_string(), "by_rank": p.to_string()})
                )?;
            } else {
                writeln!(stdout, "{} elements, rank profile {p}", p.eval_one())?;
            }
            Ok(())
        }
        Command::Pattern { window, pattern } => {
            let w = window.parse()?;
            let p: Pattern = pattern.parse()?;
            match patterns::contains(&w, &p) {
                Some(occ) => {
                    let values: Vec<i64> = occ.indices.iter().map(|&i| w.apply(i)).collect();
                    if cli.json {
                        writeln!(
                            stdout,
                            "{}",
                            json!({"contains": true, "indices": occ.indices, "values": values})
                        )?;
                    } else {
                        writeln!(
                            stdout,
                            "contains {p} at indices {:?} with values {values:?}",
                            occ.indices
                        )?;
                    }
                }
                None => {
                    if cli.json {
                        writeln!(stdout, "{}", json!({"contains": false}))?;
                    } else {
                        writeln!(stdout, "avoids {p}")?;
                    }
                }
            }
            Ok(())
        }
        Command::Psi { window } => {
            let w = window.parse()?;
            let step = smoothness::psi(&w)?;
            if cli.json {
                writeln!(
                    stdout,
                    "{}",
                    json!({
                        "w_prime": step.w_prime.window(),
                        "sigma": step.sigma.window(),
                        "sigma_word": step.sigma.reduced_word().letters,
                        "removed_generator": step.d,
                        "subword_values": step.subword.values,
                        "pivot": step.subword.pivot_value(),
                    })
                )?;
            } else {
                writeln!(
                    stdout,
                    "w' = {}  sigma = {} (word {})",
                    step.w_prime,
                    step.sigma,
                    step.sigma.reduced_word()
                )?;
                writeln!(
                    stdout,
                    "subword {:?} pivot {} removed generator s{}",
                    step.subword.values,
                    step.subword.pivot_value(),
                    step.d
                )?;
            }
            Ok(())
        }
        Command::Spiral { n, window, i, k } => match (window, i, k) {
            (Some(win), None, None) => {
                let w = parse_window(*n, win)?;
                match smoothness::recognize_spiral(&w) {
                    Some(params) => {
                        if cli.json {
                            writeln!(
                                stdout,
                                "{}",
                                json!({"spiral": true, "i": params.i, "k": params.k})
                            )?;
                        } else {
                            writeln!(stdout, "twisted spiral i={} k={}", params.i, params.k)?;
                        }
                    }
                    None => {
                        if cli.json {
                            writeln!(stdout, "{}", json!({"spiral": false}))?;
                        } else {
                            writeln!(stdout, "not a twisted spiral")?;
                        }
                    }
                }
                Ok(())
            }
            (None, Some(i), Some(k)) => {
                let w = smoothness::twisted_spiral(*n, *i, *k)?;
                if cli.json {
                    writeln!(stdout, "{}", json!({"window": w.window()}))?;
                } else {
                    writeln!(stdout, "{w}")?;
                }
                Ok(())
            }
            _ => Err(Error::InvalidArgs(
                "spiral needs either --window or both --i and --k".into(),
            )),
        },
        Command::Witness { window } => {
            let w = window.parse()?;
            match witness::certify(&w)? {
                None => {
                    if cli.json {
                        writeln!(stdout, "{}", json!({"rationally_smooth": true}))?;
                    } else {
                        writeln!(stdout, "rationally smooth: no witness exists")?;
                    }
                }
                Some(evidence) => {
                    if cli.json {
                        let mut j = evidence.to_json();
                        j["rationally_smooth"] = json!(false);
                        writeln!(stdout, "{j}")?;
                    } else {
                        match &evidence {
                            witness::Evidence::CoefficientGap(g) => writeln!(
                                stdout,
                                "coefficient gap: support {} < coatoms {}",
                                g.support, g.coatoms
                            )?,
                            witness::Evidence::Reflections(c) => writeln!(
                                stdout,
                                "witness x = {} with {} reflections over gap {} ({})",
                                c.x, c.r_count, c.length_gap, c.case
                            )?,
                        }
                    }
                }
            }
            Ok(())
        }
        Command::Picture {
            n,
            x,
            w,
            out,
            from,
            to,
        } => {
            let x = parse_window(*n, x)?;
            let w = parse_window(*n, w)?;
            let vp = match (from, to) {
                (Some(a), Some(b)) => Viewport::new(*a, *b, *n)?,
                (None, None) => Viewport::default_for(*n),
                _ => {
                    return Err(Error::InvalidArgs(
                        "picture needs both --from and --to, or neither".into(),
                    ))
                }
            };
            let pic = pictures::build_picture(&x, &w, vp)?;
            pictures::render_svg(&pic, out)?;
            writeln!(stdout, "wrote {}", out.display())?;
            Ok(())
        }
        Command::Enumerate {
            n,
            max_length,
            count_avoiders,
            count_3412,
            long,
        } => {
            if *count_avoiders {
                if *n >= 6 && !long {
                    return Err(Error::InvalidArgs(
                        "the n >= 6 avoider count is slow; pass --long to run it".into(),
                    ));
                }
                let report = enumerate::count_avoiders(*n, cap)?;
                if cli.json {
                    writeln!(stdout, "{}", serde_json::to_string(&report).unwrap())?;
                } else {
                    writeln!(
                        stdout,
                        "{} avoiders of 3412 and 4231 in period {} (stable: {})",
                        report.count, report.n, report.stable
                    )?;
                }
                return Ok(());
            }
            if *count_3412 {
                let bound = max_length.unwrap_or(n * (n - 1) + n);
                let report = enumerate::count_3412_avoiders(*n, bound, cap)?;
                if cli.json {
                    writeln!(stdout, "{}", serde_json::to_string(&report).unwrap())?;
                } else {
                    writeln!(
                        stdout,
                        "{} avoiders of 3412 up to length {} (stable: {})",
                        report.count, report.max_len, report.stable
                    )?;
                }
                return Ok(());
            }
            let bound = max_length.ok_or_else(|| {
                Error::InvalidArgs("enumerate needs --max-length or a count flag".into())
            })?;
            for item in enumerate::levels(*n, bound, cap) {
                let (len, level) = item?;
                if cli.json {
                    writeln!(stdout, "{}", json!({"length": len, "count": level.len()}))?;
                } else {
                    writeln!(stdout, "length {len}: {} elements", level.len())?;
                }
            }
            Ok(())
        }
        Command::Verify { n, max_length } => {
            let report = enumerate::verify_theorem(*n, *max_length, cap)?;
            if cli.json {
                writeln!(stdout, "{}", serde_json::to_string(&report).unwrap())?;
            } else {
                writeln!(
                    stdout,
                    "checked {} elements of period {} up to length {}",
                    report.checked, report.n, report.max_len
                )?;
                writeln!(
                    stdout,
                    "avoiders {} spirals {} not smooth {} (spiral lengths ok: {})",
                    report.avoiders, report.spirals, report.not_smooth, report.spiral_lengths_ok
                )?;
                writeln!(stdout, "disagreements: {}", report.disagreements.len())?;
            }
            if report.disagreements.is_empty() {
                Ok(())
            } else {
                Err(Error::InvalidArgs(format!(
                    "{} classification disagreements",
                    report.disagreements.len()
                )))
            }
        }
        Command::Cache {
            n,
            max_length,
            verify_cache,
        } => {
            if *verify_cache {
                let path = enumerate::cache_path(&cli.cache_dir, *n);
                let count = enumerate::verify_cache(&path, cap)?;
                writeln!(stdout, "verified {count} records in {}", path.display())?;
                return Ok(());
            }
            let bound = max_length
                .ok_or_else(|| Error::InvalidArgs("cache build needs --max-length".into()))?;
            let count = enumerate::write_cache(&cli.cache_dir, *n, bound, cap)?;
            writeln!(
                stdout,
                "wrote {count} records to {}",
                enumerate::cache_path(&cli.cache_dir, *n).display()
            )?;
            Ok(())
        }
    }
}

fn parse_window(n: usize, s: &str) -> Result<AffinePermutation, Error> {
    let w = AffinePermutation::from_str(s)?;
    if w.n() != n {
        return Err(Error::BadArity { n, got: w.n() });
    }
    Ok(w)
}

fn print_verdict(
    w: &AffinePermutation,
    verdict: &Verdict,
    json: bool,
    out: &mut impl Write,
) -> Result<(), Error> {
    if json {
        writeln!(out, "{}", verdict.to_json())?;
        return Ok(());
    }
    match verdict {
        Verdict::RationallySmooth { reason } => {
            use smoothness::SmoothReason::*;
            let why = match reason {
                Avoider => "avoids 3412 and 4231".to_string(),
                TwistedSpiral(p) => format!("twisted spiral (i={}, k={})", p.i, p.k),
                SmallRank => "period 2".to_string(),
            };
            writeln!(out, "{w}: rationally smooth ({why})")?;
        }
        Verdict::NotRationallySmooth { witness } => {
            let values: Vec<i64> = witness
                .occurrence
                .indices
                .iter()
                .map(|&i| w.apply(i))
                .collect();
            writeln!(
                out,
                "{w}: not rationally smooth (contains {} at {:?}, values {values:?})",
                witness.pattern, witness.occurrence.indices
            )?;
        }
    }
    Ok(())
}

fn classify_batch(path: &str, out: &mut impl Write) -> Result<(), Error> {
    let reader: Box<dyn BufRead> = if path == "-" {
        Box::new(std::io::stdin().lock())
    } else {
        Box::new(std::io::BufReader::new(std::fs::File::open(path)?))
    };
    for line in reader.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let w = AffinePermutation::from_str(trimmed)?;
        let verdict = smoothness::classify(&w);
        let mut j = verdict.to_json();
        j["window"] = json!(w.window());
        writeln!(out, "{j}")?;
    }
    Ok(())
}
