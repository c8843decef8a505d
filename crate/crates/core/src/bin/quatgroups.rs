//! Command-line front end: table reproduction, presentation builders,
//! coset-index queries, center determination, and the verification
//! suite. Exit codes: 0 success, 1 usage or algorithm error, 2 for an
//! inconclusive or overflowed computation.

use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use quatgroups::center::{
    ball_scan, compute_center, shortest_relator, CenterConfig, CenterStatus, RelatorMode,
};
use quatgroups::central::as_central;
use quatgroups::commuting::{classify_mod8, exists_commuting};
use quatgroups::fp::abelian::{abelianization, derived_ab_chain};
use quatgroups::fp::coset::{todd_coxeter, Enumeration};
use quatgroups::fp::presentation::Presentation;
use quatgroups::gamma::{build_gamma_presentation, build_q_presentation, relator_evaluations};
use quatgroups::quat::{QuatInt, QuatRat};
use quatgroups::verify::{run_all, Suite, VerifyConfig};
use quatgroups::xsets::{enumerate_xq, is_prime, n_set};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Projective,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Desk,
    Extended,
}

#[derive(Parser)]
#[command(name = "quatgroups", disable_help_subcommand = true)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Ball radius for center determination
    #[arg(long, global = true, default_value_t = 10)]
    radius: usize,
    /// Maximum number of cosets per enumeration
    #[arg(long, global = true, default_value_t = 1_000_000)]
    coset_limit: usize,
    /// Worker threads for batch subcommands
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the norm-q generator set X_q
    Xq { q: u64 },
    /// n-sets n(X_p) for all odd primes below the bound
    Nset { q_max: u64 },
    /// n-sets for the primes below 1000 in the special residue classes
    NsetSpecial,
    /// Minimal n-invariants for the given primes
    Nmin { primes: Vec<u64> },
    /// Decide whether commuting elements of X_p and X_l exist
    Commute { p: u64, l: u64 },
    /// The 16-cell classification of prime pairs by residues mod 8
    Tablepl,
    /// Presentation of the projective lattice group for the prime pair
    Gamma { p: u64, l: u64 },
    /// Extension presentation of the full quaternion group
    Qpres { p: u64, l: u64 },
    /// Coset index of a two-generator subgroup in the extension group
    Index {
        p: u64,
        l: u64,
        /// Element of X_p (defaults to the first orbit representative)
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Element of X_l (defaults to the first orbit representative)
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        /// Central scalar to adjoin to the subgroup
        #[arg(long, allow_hyphen_values = true)]
        adjoin: Option<String>,
    },
    /// Abelianization of a presentation read from a file
    Abel { presentation_file: String },
    /// Successive derived-quotient abelianizations of a presentation
    DerivedChain { presentation_file: String, depth: usize },
    /// Determine the center of the group generated by two quaternions
    Center {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Scan the projective Cayley ball for central scalars
    Ball {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        radius: usize,
    },
    /// Shortest relator of the two-generator group within a length bound
    ShortestRelator {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(value_enum)]
        mode: Mode,
        max_len: usize,
    },
    /// Abelianization comparison showing -1 outside the derived subgroup
    Remark14 { p: u64, l: u64 },
    /// Run the acceptance verification suite
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Desk)]
        suite: SuiteArg,
    },
}

fn parse_quat(s: &str) -> Result<QuatInt, String> {
    s.parse::<QuatInt>().map_err(|e| format!("bad quaternion {s:?}: {e}"))
}

/// Runs `f` over the items on up to `jobs` threads, preserving order.
fn parallel_map<T, R, F>(jobs: usize, items: Vec<T>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let n = items.len();
    let mut out: Vec<Option<R>> = (0..n).map(|_| None).collect();
    if jobs <= 1 || n <= 1 {
        for (slot, item) in out.iter_mut().zip(&items) {
            *slot = Some(f(item));
        }
    } else {
        let next = AtomicUsize::new(0);
        let slots: Vec<std::sync::Mutex<&mut Option<R>>> =
            out.iter_mut().map(std::sync::Mutex::new).collect();
        std::thread::scope(|scope| {
            for _ in 0..jobs.min(n) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= n {
                        break;
                    }
                    let r = f(&items[i]);
                    **slots[i].lock().unwrap() = Some(r);
                });
            }
        });
    }
    out.into_iter().map(|r| r.expect("filled slot")).collect()
}

fn pres_to_json(pres: &Presentation) -> serde_json::Value {
    json!({
        "generators": pres.gen_names,
        "relators": pres.relators.iter().map(|r| r.render(&pres.gen_names)).collect::<Vec<_>>(),
    })
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let fmt = cli.format;
    match &cli.command {
        Command::Xq { q } => {
            let xq = enumerate_xq(*q).map_err(|e| e.to_string())?;
            let elements: Vec<String> = xq.elements.iter().map(|e| e.to_string()).collect();
            match fmt {
                Format::Text => {
                    println!("|X_{q}| = {}", elements.len());
                    for e in &elements {
                        println!("{e}");
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({"q": q, "count": elements.len(), "elements": elements})
                ),
            }
        }
        Command::Nset { q_max } => {
            let primes: Vec<u64> = (3..*q_max).filter(|&p| is_prime(p)).collect();
            let rows = parallel_map(cli.jobs, primes, |&p| {
                (p, n_set(p).expect("odd prime").values)
            });
            match fmt {
                Format::Text => {
                    for (p, values) in &rows {
                        let list: Vec<String> = values.iter().map(u64::to_string).collect();
                        println!("{p}: {{{}}}", list.join(", "));
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|(p, v)| json!({"p": p, "n_set": v}))
                        .collect();
                    println!("{}", json!(rows));
                }
            }
        }
        Command::NsetSpecial => {
            let primes: Vec<u64> = (3..1000)
                .filter(|&p| {
                    is_prime(p) && p % 24 == 23 && [7, 39, 63, 79, 87].contains(&(p % 88))
                })
                .collect();
            let rows = parallel_map(cli.jobs, primes, |&p| {
                (p, n_set(p).expect("odd prime").values)
            });
            match fmt {
                Format::Text => {
                    for (p, values) in &rows {
                        let list: Vec<String> = values.iter().map(u64::to_string).collect();
                        println!("{p}: {{{}}}", list.join(", "));
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|(p, v)| json!({"p": p, "n_set": v}))
                        .collect();
                    println!("{}", json!(rows));
                }
            }
        }
        Command::Nmin { primes } => {
            let rows = parallel_map(cli.jobs, primes.clone(), |&p| {
                n_set(p).map(|ns| (p, ns.min)).map_err(|e| e.to_string())
            });
            let mut out = Vec::new();
            for r in rows {
                out.push(r?);
            }
            match fmt {
                Format::Text => {
                    for (p, min) in &out {
                        println!("{p}: {min}");
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = out
                        .iter()
                        .map(|(p, m)| json!({"p": p, "n_min": m}))
                        .collect();
                    println!("{}", json!(rows));
                }
            }
        }
        Command::Commute { p, l } => {
            let class = classify_mod8(*p, *l).map_err(|e| e.to_string())?;
            let (exists, witness) = exists_commuting(*p, *l).map_err(|e| e.to_string())?;
            match fmt {
                Format::Text => {
                    println!("mod-8 class: {class:?}");
                    println!("commuting pair exists: {exists}");
                    if let Some(w) = &witness {
                        println!("x = {}", w.x);
                        println!("y = {}", w.y);
                        println!("shared n = {}", w.shared_n);
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "p": p, "l": l,
                        "mod8_class": format!("{class:?}"),
                        "exists": exists,
                        "witness": witness.as_ref().map(|w| json!({
                            "x": w.x.to_string(),
                            "y": w.y.to_string(),
                            "shared_n": w.shared_n,
                        })),
                    })
                ),
            }
        }
        Command::Tablepl => {
            let residues = [1u64, 3, 5, 7];
            let cell = |rp: u64, rl: u64| {
                let p = (3..200).find(|&p| is_prime(p) && p % 8 == rp).unwrap();
                let l = (3..200)
                    .find(|&l| is_prime(l) && l % 8 == rl && l != p)
                    .unwrap();
                classify_mod8(p, l).expect("valid pair")
            };
            match fmt {
                Format::Text => {
                    println!("p\\l    1        3        5        7");
                    for rp in residues {
                        let row: Vec<String> = residues
                            .iter()
                            .map(|&rl| format!("{:<8}", format!("{:?}", cell(rp, rl))))
                            .collect();
                        println!("{rp}    {}", row.join(" "));
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = residues
                        .iter()
                        .map(|&rp| {
                            let cells: Vec<String> = residues
                                .iter()
                                .map(|&rl| format!("{:?}", cell(rp, rl)))
                                .collect();
                            json!({"p_mod_8": rp, "cells": cells})
                        })
                        .collect();
                    println!("{}", json!(rows));
                }
            }
        }
        Command::Gamma { p, l } => {
            let gp = build_gamma_presentation(*p, *l, None, None).map_err(|e| e.to_string())?;
            match fmt {
                Format::Text => {
                    println!("{}", gp.pres);
                    for (name, q) in gp.pres.gen_names.iter().zip(&gp.gen_quats) {
                        println!("{name} = {q}");
                    }
                }
                Format::Json => {
                    let mut v = pres_to_json(&gp.pres);
                    v["gen_quats"] = json!(gp
                        .gen_quats
                        .iter()
                        .map(|q| q.to_string())
                        .collect::<Vec<_>>());
                    v["p"] = json!(p);
                    v["l"] = json!(l);
                    println!("{v}");
                }
            }
        }
        Command::Qpres { p, l } => {
            let gp = build_gamma_presentation(*p, *l, None, None).map_err(|e| e.to_string())?;
            let evals = relator_evaluations(&gp).map_err(|e| e.to_string())?;
            let qp = build_q_presentation(&gp).map_err(|e| e.to_string())?;
            match fmt {
                Format::Text => {
                    println!("{}", qp.pres);
                    for (name, q) in qp.pres.gen_names.iter().zip(&qp.gen_quats) {
                        println!("{name} = {q}");
                    }
                    for k in &qp.kernel {
                        println!(
                            "kernel {} = {} (relator {})",
                            k.scalar,
                            k.word.render(&qp.pres.gen_names),
                            k.relator_index + 1
                        );
                    }
                    println!("-1 = {}", qp.minus_one_word.render(&qp.pres.gen_names));
                }
                Format::Json => {
                    let mut v = pres_to_json(&qp.pres);
                    v["gen_quats"] = json!(qp
                        .gen_quats
                        .iter()
                        .map(|q| q.to_string())
                        .collect::<Vec<_>>());
                    v["relator_evaluations"] =
                        json!(evals.iter().map(|s| s.to_string()).collect::<Vec<_>>());
                    v["kernel"] = json!(qp
                        .kernel
                        .iter()
                        .map(|k| json!({
                            "relator": k.relator_index + 1,
                            "scalar": k.scalar.to_string(),
                            "word": k.word.render(&qp.pres.gen_names),
                        }))
                        .collect::<Vec<_>>());
                    v["minus_one_word"] = json!(qp.minus_one_word.render(&qp.pres.gen_names));
                    println!("{v}");
                }
            }
        }
        Command::Index { p, l, x, y, adjoin } => {
            let gp = build_gamma_presentation(*p, *l, None, None).map_err(|e| e.to_string())?;
            let qp = build_q_presentation(&gp).map_err(|e| e.to_string())?;
            let pick = |arg: &Option<String>, default: usize| -> Result<QuatInt, String> {
                match arg {
                    Some(s) => parse_quat(s),
                    None => Ok(gp.gen_quats[default].clone()),
                }
            };
            let xq = pick(x, 0)?;
            let yq = pick(y, gp.n_p_gens)?;
            let values = qp.gen_values();
            let find = |target: &QuatInt| {
                quatgroups::center::element_word(&qp, &gp.gen_quats, &values, target, *p, *l)
                    .ok_or_else(|| format!("{target} is not an element of the generator sets"))
            };
            let mut gens = vec![find(&xq)?, find(&yq)?];
            if let Some(s) = adjoin {
                let scalar = s
                    .parse::<QuatRat>()
                    .map_err(|e| e.to_string())
                    .and_then(|v| as_central(&v, *p, *l).map_err(|e| e.to_string()))?;
                gens.push(
                    qp.scalar_word(&scalar)
                        .ok_or_else(|| format!("{scalar} is not reachable from the kernel"))?,
                );
            }
            match todd_coxeter(&qp.pres, &gens, cli.coset_limit).map_err(|e| e.to_string())? {
                Enumeration::Complete(t) => match fmt {
                    Format::Text => println!("index: {}", t.n_cosets()),
                    Format::Json => println!(
                        "{}",
                        json!({"status": "determined", "index": t.n_cosets()})
                    ),
                },
                Enumeration::Overflow => {
                    match fmt {
                        Format::Text => println!("index: inconclusive (coset limit reached)"),
                        Format::Json => println!("{}", json!({"status": "inconclusive"})),
                    }
                    return Ok(ExitCode::from(2));
                }
            }
        }
        Command::Abel { presentation_file } => {
            let text = std::fs::read_to_string(presentation_file)
                .map_err(|e| format!("{presentation_file}: {e}"))?;
            let pres = Presentation::parse(text.trim()).map_err(|e| e.to_string())?;
            let a = abelianization(&pres);
            match fmt {
                Format::Text => println!("{a}"),
                Format::Json => println!(
                    "{}",
                    json!({"free_rank": a.free_rank, "torsion": a.torsion_u64()})
                ),
            }
        }
        Command::DerivedChain { presentation_file, depth } => {
            let text = std::fs::read_to_string(presentation_file)
                .map_err(|e| format!("{presentation_file}: {e}"))?;
            let pres = Presentation::parse(text.trim()).map_err(|e| e.to_string())?;
            let chain =
                derived_ab_chain(&pres, *depth, cli.coset_limit).map_err(|e| e.to_string())?;
            match fmt {
                Format::Text => {
                    for (i, a) in chain.iter().enumerate() {
                        println!("step {i}: {a}");
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = chain
                        .iter()
                        .map(|a| json!({"free_rank": a.free_rank, "torsion": a.torsion_u64()}))
                        .collect();
                    println!("{}", json!(rows));
                }
            }
        }
        Command::Center { x, y } => {
            let xq = parse_quat(x)?;
            let yq = parse_quat(y)?;
            let res = compute_center(
                &xq,
                &yq,
                CenterConfig {
                    radius: cli.radius,
                    coset_limit: cli.coset_limit,
                },
            )
            .map_err(|e| e.to_string())?;
            let gens: Vec<String> =
                res.center.basis_scalars().iter().map(|s| s.to_string()).collect();
            match fmt {
                Format::Text => {
                    println!(
                        "status: {}",
                        match res.status {
                            CenterStatus::Determined => "determined",
                            CenterStatus::Inconclusive => "inconclusive",
                        }
                    );
                    println!("center generators: {}", gens.join(" "));
                    for (lam, with, without) in &res.evidence {
                        println!("lambda {lam}: index {with} (without: {without})");
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "status": match res.status {
                            CenterStatus::Determined => "determined",
                            CenterStatus::Inconclusive => "inconclusive",
                        },
                        "center_generators": gens,
                        "evidence": res.evidence.iter().map(|(lam, with, without)| json!({
                            "lambda": lam.to_string(),
                            "index_with": with,
                            "index_without": without,
                        })).collect::<Vec<_>>(),
                    })
                ),
            }
            if res.status == CenterStatus::Inconclusive {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Ball { x, y, radius } => {
            let xq = parse_quat(x)?;
            let yq = parse_quat(y)?;
            let scan = ball_scan(&xq, &yq, *radius).map_err(|e| e.to_string())?;
            let scalars: Vec<String> =
                scan.scalars_found.iter().map(|s| s.to_string()).collect();
            match fmt {
                Format::Text => {
                    println!("radius: {}", scan.radius);
                    println!("elements visited: {}", scan.elements_visited);
                    println!("central scalars: {}", scalars.join(" "));
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "radius": scan.radius,
                        "elements_visited": scan.elements_visited,
                        "scalars": scalars,
                    })
                ),
            }
        }
        Command::ShortestRelator { x, y, mode, max_len } => {
            let xq = parse_quat(x)?;
            let yq = parse_quat(y)?;
            let mode = match mode {
                Mode::Projective => RelatorMode::ProjectiveRelator,
                Mode::Exact => RelatorMode::ExactRelator,
            };
            let found = shortest_relator(&xq, &yq, mode, *max_len).map_err(|e| e.to_string())?;
            let names = vec!["x".to_string(), "y".to_string()];
            match fmt {
                Format::Text => match &found {
                    Some((len, w)) => println!("length {len}: {}", w.render(&names)),
                    None => println!("no relator up to length {max_len}"),
                },
                Format::Json => println!(
                    "{}",
                    json!(found.as_ref().map(|(len, w)| json!({
                        "length": len,
                        "word": w.render(&names),
                    })))
                ),
            }
        }
        Command::Remark14 { p, l } => {
            let gp = build_gamma_presentation(*p, *l, None, None).map_err(|e| e.to_string())?;
            let qp = build_q_presentation(&gp).map_err(|e| e.to_string())?;
            let base = abelianization(&qp.pres);
            let killed =
                abelianization(&qp.pres.with_added_relators(std::slice::from_ref(&qp.minus_one_word)));
            let separated = base != killed;
            match fmt {
                Format::Text => {
                    println!("abelianization: {base}");
                    println!("abelianization with -1 killed: {killed}");
                    println!("-1 in the derived subgroup: {}", if separated { "no" } else { "undecided" });
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "abelianization": {"free_rank": base.free_rank, "torsion": base.torsion_u64()},
                        "with_minus_one_killed": {"free_rank": killed.free_rank, "torsion": killed.torsion_u64()},
                        "minus_one_in_derived": if separated { "no" } else { "undecided" },
                    })
                ),
            }
        }
        Command::Verify { suite } => {
            let cfg = VerifyConfig {
                suite: match suite {
                    SuiteArg::Desk => Suite::Desk,
                    SuiteArg::Extended => Suite::Extended,
                },
                coset_limit: cli.coset_limit,
            };
            let reports = if cli.jobs > 1 {
                let items: Vec<_> = quatgroups::verify::criteria();
                parallel_map(cli.jobs, items, |c| {
                    let outcome = (c.run)(&cfg);
                    quatgroups::verify::CriterionReport {
                        id: c.id,
                        name: c.name,
                        passed: outcome.is_ok(),
                        detail: outcome.err(),
                    }
                })
            } else {
                run_all(&cfg)
            };
            let mut all_ok = true;
            match fmt {
                Format::Text => {
                    for r in &reports {
                        match &r.detail {
                            None => println!("PASS {:>2} {}", r.id, r.name),
                            Some(d) => {
                                all_ok = false;
                                println!("FAIL {:>2} {}: {d}", r.id, r.name);
                            }
                        }
                    }
                }
                Format::Json => {
                    all_ok = reports.iter().all(|r| r.passed);
                    let rows: Vec<_> = reports
                        .iter()
                        .map(|r| json!({
                            "id": r.id,
                            "name": r.name,
                            "passed": r.passed,
                            "detail": r.detail,
                        }))
                        .collect();
                    println!("{}", json!(rows));
                }
            }
            if !all_ok {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version are normal terminations
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
