use serde::Serialize;

use qhyper_core::bench::compare_hdet;
use qhyper_core::hosvd::{hosvd, lu_equivalence, lu_fingerprint, mode_factor};
use qhyper_core::hyperdet::{
    hdet_fast, hdet_general, hdet_reduced, sign_string_ent, sign_string_sigma, verify_theorem2, Theorem2Report,
};
use qhyper_core::json::{self, HosvdJson, StateJson, F17};
use qhyper_core::ket::format_ket;
use qhyper_core::state::{hypermatrix_to_state, n_tangle, state_to_hypermatrix};
use qhyper_core::tensor::mode_permute;
use qhyper_core::{LuVerdict, ModePermutation, Normalization, TangleRoute};

use crate::input::{load_state, parse_state, read_source, write_output};
use crate::{Cli, Command, Failure, Method, Output, SignWhat, Via};

#[derive(Serialize)]
struct SvalsJson {
    mode_svals: Vec<Vec<F17>>,
}

#[derive(Serialize)]
struct ModeSvalsJson {
    mode: usize,
    svals: Vec<F17>,
}

#[derive(Serialize)]
struct CertificateJson {
    mode: usize,
    left: Vec<F17>,
    right: Vec<F17>,
}

#[derive(Serialize)]
struct VerdictJson {
    verdict: &'static str,
    tol: F17,
    certificate: Option<CertificateJson>,
}

#[derive(Serialize)]
struct HdetJson {
    re: F17,
    im: F17,
    method: &'static str,
}

#[derive(Serialize)]
struct TangleJson {
    tangle: F17,
    via: &'static str,
}

#[derive(Serialize)]
struct SignsJson {
    what: &'static str,
    n: u32,
    signs: String,
}

#[derive(Serialize)]
struct VerifyJson {
    n: u32,
    pass: bool,
    factor: i8,
    string_pass: bool,
    string_first_mismatch: Option<usize>,
    chi_pass: bool,
    chi_first_mismatch: Option<usize>,
    dense_pass: Option<bool>,
    dense_first_mismatch: Option<(usize, usize)>,
}

#[derive(Serialize)]
struct BenchJson {
    qubits: usize,
    reps: usize,
    seed: u64,
    fast_mean_ns: F17,
    reduced_mean_ns: F17,
    ratio: F17,
    max_abs_diff: F17,
}

fn f17s(v: &[f64]) -> Vec<F17> {
    v.iter().copied().map(F17).collect()
}

fn svals_line(mode: usize, s: &[f64]) -> String {
    format!(
        "mode {mode}: {}",
        s.iter().map(f64::to_string).collect::<Vec<_>>().join(" ")
    )
}

pub fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = &cli.config;
    let json_out = cfg.output == Output::Json;
    match &cli.command {
        Command::Parse {
            input,
            out,
            renormalize,
            no_normalize,
        } => {
            let mode = match (renormalize, no_normalize) {
                (true, _) => Normalization::Renormalize,
                (_, true) => Normalization::Skip,
                _ => Normalization::Check,
            };
            let state = parse_state(&read_source(input)?, mode)?;
            write_output(out.as_deref(), &json::state_to_json(&state))
        }
        Command::Svals { state, mode } => {
            let h = state_to_hypermatrix(&load_state(state)?);
            match mode {
                Some(k) => {
                    let (_, s) = mode_factor(&h, *k)?;
                    if json_out {
                        println!(
                            "{}",
                            json::to_string(&ModeSvalsJson {
                                mode: *k,
                                svals: f17s(&s)
                            })
                        );
                    } else {
                        println!("{}", svals_line(*k, &s));
                    }
                }
                None => {
                    let all = lu_fingerprint(&h)?;
                    if json_out {
                        let mode_svals = all.iter().map(|s| f17s(s)).collect();
                        println!("{}", json::to_string(&SvalsJson { mode_svals }));
                    } else {
                        for (k, s) in all.iter().enumerate() {
                            println!("{}", svals_line(k + 1, s));
                        }
                    }
                }
            }
            Ok(())
        }
        Command::Hosvd { state } => {
            let r = hosvd(&state_to_hypermatrix(&load_state(state)?))?;
            if json_out {
                println!("{}", json::to_string(&HosvdJson::from(&r)));
            } else {
                for (k, s) in r.mode_svals.iter().enumerate() {
                    println!("{}", svals_line(k + 1, s));
                }
                println!("core: {}", format_ket(&hypermatrix_to_state(&r.core)?));
            }
            Ok(())
        }
        Command::LuEquiv { a, b } => {
            let (sa, sb) = (load_state(a)?, load_state(b)?);
            let verdict = lu_equivalence(&state_to_hypermatrix(&sa), &state_to_hypermatrix(&sb), cfg.tol)?;
            let certificate = match &verdict {
                LuVerdict::NotEquivalent(c) => {
                    println!("{} (mode {})", verdict.tag(), c.mode);
                    Some(CertificateJson {
                        mode: c.mode,
                        left: f17s(&c.left),
                        right: f17s(&c.right),
                    })
                }
                _ => {
                    println!("{}", verdict.tag());
                    None
                }
            };
            println!(
                "{}",
                json::to_string(&VerdictJson {
                    verdict: verdict.tag(),
                    tol: F17(cfg.tol),
                    certificate
                })
            );
            Ok(())
        }
        Command::Permute { state, perm, out } => {
            let s = load_state(state)?;
            let images = perm
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::usage(format!("--perm {perm:?}: {e}")))?;
            let pi = ModePermutation::new(&images)?;
            let moved = hypermatrix_to_state(&mode_permute(&state_to_hypermatrix(&s), &pi)?)?;
            write_output(out.as_deref(), &json::to_string(&StateJson::from(&moved)))
        }
        Command::Hdet { state, method } => {
            let s = load_state(state)?;
            let (value, name) = match method {
                Method::Fast => (hdet_fast(&s)?, "fast"),
                Method::Reduced => (hdet_reduced(&state_to_hypermatrix(&s))?, "reduced"),
                Method::General => (hdet_general(&state_to_hypermatrix(&s))?, "general"),
            };
            println!(
                "{}",
                json::to_string(&HdetJson {
                    re: F17(value.re),
                    im: F17(value.im),
                    method: name
                })
            );
            Ok(())
        }
        Command::Tangle { state, via } => {
            let s = load_state(state)?;
            let (route, name) = match via {
                Via::Hdet => (TangleRoute::Hdet, "hdet"),
                Via::Spinflip => (TangleRoute::SpinFlip, "spinflip"),
            };
            let t = n_tangle(&s, route)?;
            if json_out {
                println!(
                    "{}",
                    json::to_string(&TangleJson {
                        tangle: F17(t),
                        via: name
                    })
                );
            } else {
                println!("{t}");
            }
            Ok(())
        }
        Command::Signs { what, n, blocks } => {
            let (s, name) = match what {
                SignWhat::Ent => (sign_string_ent(*n)?, "ent"),
                SignWhat::Sigma => (sign_string_sigma(*n)?, "sigma"),
            };
            let line = if *blocks {
                s.block_word().ok_or_else(|| Failure {
                    code: 3,
                    message: "not a P/N block word".into(),
                })?
            } else {
                s.to_string()
            };
            if json_out {
                println!(
                    "{}",
                    json::to_string(&SignsJson {
                        what: name,
                        n: *n,
                        signs: line
                    })
                );
            } else {
                println!("{line}");
            }
            Ok(())
        }
        Command::Verify { n } => {
            let r = verify_theorem2(*n)?;
            if json_out {
                println!("{}", json::to_string(&verify_json(&r)));
            } else {
                println!("{}", verify_line(&r));
            }
            Ok(())
        }
        Command::Bench { n, reps } => {
            let r = compare_hdet(*n, *reps, cfg.seed)?;
            if json_out {
                println!(
                    "{}",
                    json::to_string(&BenchJson {
                        qubits: r.qubits,
                        reps: r.reps,
                        seed: cfg.seed,
                        fast_mean_ns: F17(r.fast_mean.as_secs_f64() * 1e9),
                        reduced_mean_ns: F17(r.reduced_mean.as_secs_f64() * 1e9),
                        ratio: F17(r.ratio()),
                        max_abs_diff: F17(r.max_abs_diff),
                    })
                );
            } else {
                println!("qubits {} reps {} seed {}", r.qubits, r.reps, cfg.seed);
                println!("fast    {:?} per state", r.fast_mean);
                println!("reduced {:?} per state", r.reduced_mean);
                println!("ratio {:.3} max |diff| {:e}", r.ratio(), r.max_abs_diff);
            }
            Ok(())
        }
    }
}

fn verify_json(r: &Theorem2Report) -> VerifyJson {
    VerifyJson {
        n: r.n,
        pass: r.passed(),
        factor: r.factor,
        string_pass: r.string_pass,
        string_first_mismatch: r.string_first_mismatch,
        chi_pass: r.chi_pass,
        chi_first_mismatch: r.chi_first_mismatch,
        dense_pass: r.dense.as_ref().map(|d| d.pass),
        dense_first_mismatch: r.dense.as_ref().and_then(|d| d.first_mismatch),
    }
}

fn verify_line(r: &Theorem2Report) -> String {
    let ok = |b: bool| if b { "ok" } else { "FAIL" };
    let dense = match &r.dense {
        Some(d) => ok(d.pass),
        None => "skipped",
    };
    let mut line = format!(
        "{} n={} factor={} string={} chi={} dense={}",
        if r.passed() { "PASS" } else { "FAIL" },
        r.n,
        r.factor,
        ok(r.string_pass),
        ok(r.chi_pass),
        dense
    );
    if let Some(j) = r.string_first_mismatch.or(r.chi_first_mismatch) {
        line.push_str(&format!(" first_mismatch={j}"));
    }
    line
}
