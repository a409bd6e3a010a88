use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use circulant_wdr::circulant::Circulant;
use circulant_wdr::classify::{verify_main2, SearchOptions, DEFAULT_CAP, EXTENDED_CAP};
use circulant_wdr::constructions::FamilyTag;
use circulant_wdr::sring::{
    is_schur_partition, multiplier_closure_check, summary, verify_decomposition_lemmas,
};
use circulant_wdr::wdr::{
    check_prop_q3, check_prop_q_gt_3, check_pure, delta_q, is_wdr, CertificateReport, Outcome,
};
use circulant_wdr::Error;

/// Weakly distance-regular circulants: checks, constructions and exhaustive classification.
#[derive(Parser)]
#[command(name = "wdrc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a circulant such as `13:1,3,9` is weakly distance-regular.
    Check {
        circulant: Circulant,
        #[arg(long)]
        json: bool,
        /// Print classes and intersection numbers of the attached scheme.
        #[arg(long)]
        scheme: bool,
        /// Print the S-ring structure of the distance module.
        #[arg(long)]
        sring: bool,
        /// Analyse the subdigraph Δ_Q of (1, Q−1)-arcs.
        #[arg(long, value_name = "Q")]
        delta: Option<u32>,
    },
    /// Enumerate one-type weakly distance-regular circulants and compare with the known families.
    Classify {
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Append-only JSONL cache; reruns resume from it.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Raise the order cap from 24 to 30.
        #[arg(long)]
        extended: bool,
        /// Process every connection set instead of one per multiplier class.
        #[arg(long)]
        no_reduction: bool,
    },
    /// Print the circulant of a family tag such as `C3xKh(h=4)`.
    Construct { tag: FamilyTag },
    /// Run the scheme identity, multiplier closure and decomposition suites.
    Props {
        circulant: Circulant,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Mismatch,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check {
            circulant,
            json,
            scheme,
            sring,
            delta,
        } => check(&circulant, json, scheme, sring, delta),
        Command::Classify {
            n_min,
            n_max,
            jobs,
            cache,
            json,
            extended,
            no_reduction,
        } => {
            let opts = SearchOptions {
                cap: if extended { EXTENDED_CAP } else { DEFAULT_CAP },
                jobs,
                multiplier_reduction: !no_reduction,
                cache,
            };
            classify(n_min, n_max, &opts, json)
        }
        Command::Construct { tag } => construct(tag),
        Command::Props { circulant, json } => props(&circulant, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("report serializes")
    );
}

fn check(
    c: &Circulant,
    json: bool,
    scheme: bool,
    sring: bool,
    delta: Option<u32>,
) -> Result<(), Failure> {
    let cert = match is_wdr(c)? {
        Outcome::NotWdr(w) => {
            if json {
                print_json(&json!({ "circulant": c, "wdr": false, "witness": w }));
            } else {
                println!("{c} is not weakly distance-regular");
                println!("  {w}");
            }
            return Err(Failure::Mismatch);
        }
        Outcome::Wdr(cert) => cert,
    };
    let report = CertificateReport::from(&*cert);
    let scheme_report = scheme.then(|| cert.scheme.report());
    let sring_summary = if sring {
        Some(summary(
            &is_schur_partition(&cert.partition).map_err(|w| Failure::Usage(w.to_string()))?,
        ))
    } else {
        None
    };
    let mut ok = true;
    let delta_report = match delta {
        None => None,
        Some(q) => {
            let d = delta_q(&cert, q)?;
            let pure = check_pure(&cert, q).ok();
            let large = check_prop_q_gt_3(&cert, q).ok();
            let three = if q == 3 {
                check_prop_q3(&cert).ok()
            } else {
                None
            };
            ok &= pure.as_ref().is_none_or(|r| r.passed())
                && large.as_ref().is_none_or(|r| r.passed());
            Some(json!({ "q": q, "delta": d, "pure": pure, "large_q": large, "q3": three }))
        }
    };
    if json {
        let mut v = serde_json::to_value(&report).expect("report serializes");
        v["wdr"] = json!(true);
        if let Some(s) = &scheme_report {
            v["scheme"] = serde_json::to_value(s).expect("report serializes");
        }
        if let Some(s) = &sring_summary {
            v["sring"] = serde_json::to_value(s).expect("report serializes");
        }
        if let Some(d) = delta_report {
            v["delta"] = d;
        }
        print_json(&v);
    } else {
        print!("{report}");
        if let Some(s) = &scheme_report {
            print!("{s}");
        }
        if let Some(s) = &sring_summary {
            print!("{s}");
        }
        if let Some(d) = delta_report {
            println!("Δ_{}: {}", d["q"], d["delta"].as_str().unwrap_or_default());
            for key in ["pure", "large_q", "q3"] {
                if !d[key].is_null() {
                    println!("  {key}: {}", d[key]);
                }
            }
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn classify(n_min: u32, n_max: u32, opts: &SearchOptions, json: bool) -> Result<(), Failure> {
    let reports = verify_main2(n_min, n_max, opts)?;
    let ok = reports.iter().all(|r| r.passed());
    if json {
        print_json(&reports);
    } else {
        for r in &reports {
            print!("{r}");
        }
        let primitive: Vec<String> = reports
            .iter()
            .flat_map(|r| r.primitive.found.iter().map(|s| s.to_string()))
            .collect();
        println!("primitive: {}", primitive.join(" "));
        println!(
            "{} for n in {n_min}..={n_max}; the order cap ({}) is a compute budget, not a bound from the classification",
            if ok { "all exact-match" } else { "MISMATCH" },
            opts.cap
        );
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn construct(tag: FamilyTag) -> Result<(), Failure> {
    println!("{}", tag.build()?);
    Ok(())
}

fn props(c: &Circulant, json: bool) -> Result<(), Failure> {
    let cert = match is_wdr(c)? {
        Outcome::NotWdr(w) => {
            if json {
                print_json(&json!({ "circulant": c, "wdr": false, "witness": w }));
            } else {
                println!("{c} is not weakly distance-regular: {w}");
            }
            return Err(Failure::Mismatch);
        }
        Outcome::Wdr(cert) => cert,
    };
    let identities = cert.scheme.check_identities();
    let s = is_schur_partition(&cert.partition).map_err(|w| Failure::Usage(w.to_string()))?;
    let closure = multiplier_closure_check(&s);
    let lemmas: Vec<_> = s
        .basic_sets()
        .iter()
        .filter(|x| x.generates())
        .filter_map(|x| verify_decomposition_lemmas(&s, x).ok().map(|r| (*x, r)))
        .collect();
    let ok = identities.passed() && closure.passed() && lemmas.iter().all(|(_, r)| r.passed());
    if json {
        print_json(&json!({
            "circulant": c,
            "identities": identities,
            "multiplier_closure": { "permutations": closure.permutations.len(), "violations": closure.violations },
            "decomposition": lemmas.iter().map(|(x, r)| json!({ "basic_set": x, "report": r })).collect::<Vec<_>>(),
            "passed": ok,
        }));
    } else {
        println!("{c}");
        println!(
            "  intersection identities: {} checked, {} violations",
            identities.checked,
            identities.violations.len()
        );
        println!(
            "  multiplier closure: {} multipliers, {} violations",
            closure.permutations.len(),
            closure.violations.len()
        );
        if lemmas.is_empty() {
            println!(
                "  decomposition checks: not applicable (no generating basic set with a radical)"
            );
        }
        for (x, r) in &lemmas {
            println!(
                "  decomposition checks on {x}: {}",
                if r.passed() { "pass" } else { "FAIL" }
            );
        }
        println!("{}", if ok { "all pass" } else { "VIOLATIONS FOUND" });
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}
