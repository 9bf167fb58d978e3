//! Acceptance checks. Prints one PASS/FAIL line per criterion, with the
//! failing sub-checks listed underneath, and exits non-zero if any fail.
//!
//! Run with `cargo test -p qhyper-core --test acceptance`.

use std::time::{Duration, Instant};

use qhyper_core::bench::compare_hdet;
use qhyper_core::hosvd::{hosvd, lu_equivalence, lu_fingerprint};
use qhyper_core::hyperdet::{
    hdet_fast, hdet_general, hdet_reduced, sign_string_ent, sign_string_sigma, verify_theorem2, MAX_DENSE_N,
};
use qhyper_core::ket::parse_ket;
use qhyper_core::state::{
    apply_local_unitaries, n_tangle, random_sl2_from, random_state_from, random_su2_from, seeded_rng,
    state_to_hypermatrix,
};
use qhyper_core::tensor::{k_mode_unfold, mode_permute, multilinear_multiply};
use qhyper_core::{LuVerdict, ModePermutation, QubitState, TangleRoute};

struct Criterion {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion {
            id,
            title,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn within(&mut self, elapsed: Duration, limit: Duration) {
        self.note(format!(
            "runtime {:.3} s (limit {} s)",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ));
        self.check(
            elapsed < limit,
            format!("runtime {:.3} s exceeds {} s", elapsed.as_secs_f64(), limit.as_secs()),
        );
    }

    fn report(&self) -> bool {
        let pass = self.failures.is_empty();
        println!(
            "{} criterion {}: {}",
            if pass { "PASS" } else { "FAIL" },
            self.id,
            self.title
        );
        for n in &self.notes {
            println!("       {n}");
        }
        for f in &self.failures {
            println!("       failed: {f}");
        }
        pass
    }
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn example_states() -> Criterion {
    let mut c = Criterion::new(1, "three-qubit example: singular values and LU verdicts");
    let start = Instant::now();
    let psi = state_to_hypermatrix(&parse_ket("1/2|000> - 1/2|100> + 1/sqrt(2)|101>").unwrap());
    let phi = state_to_hypermatrix(&parse_ket("1/2|000> - 1/2|010> + 1/sqrt(2)|101>").unwrap());
    let r2 = 2f64.sqrt();
    let psi_s = &lu_fingerprint(&psi).unwrap()[0];
    let phi_s = &lu_fingerprint(&phi).unwrap()[0];
    c.note(format!("psi mode-1 {psi_s:?}, phi mode-1 {phi_s:?}"));
    c.check(
        close(psi_s, &[(2.0 + r2).sqrt() / 2.0, (2.0 - r2).sqrt() / 2.0], 1e-10),
        "psi mode-1 singular values",
    );
    c.check(close(phi_s, &[1.0 / r2, 1.0 / r2], 1e-10), "phi mode-1 singular values");

    let verdict = lu_equivalence(&psi, &phi, 1e-10).unwrap();
    c.check(
        matches!(verdict, LuVerdict::NotEquivalent(_)),
        format!("(psi, phi) gave {}", verdict.tag()),
    );

    for (name, cycle) in [("pi1 = (13)", &[1usize, 3][..]), ("pi2 = (132)", &[1, 3, 2][..])] {
        let pi = ModePermutation::from_cycles(3, &[cycle]).unwrap();
        let moved = mode_permute(&psi, &pi).unwrap();
        let verdict = lu_equivalence(&psi, &moved, 1e-10).unwrap();
        let detail = match &verdict {
            LuVerdict::NotEquivalent(cert) => {
                format!(" (mode {} spectra {:?} vs {:?})", cert.mode, cert.left, cert.right)
            }
            _ => String::new(),
        };
        c.note(format!("(psi, psi^{name}) -> {}{detail}", verdict.tag()));
        c.check(
            verdict == LuVerdict::EquivalentCoreMatch,
            format!(
                "(psi, psi^{name}) expected EquivalentCoreMatch, got {}{detail}",
                verdict.tag()
            ),
        );
    }
    c.within(start.elapsed(), Duration::from_secs(1));
    c
}

fn sign_strings() -> Criterion {
    let mut c = Criterion::new(2, "sign strings");
    let e1 = sign_string_ent(1).unwrap().to_string();
    let e2 = sign_string_ent(2).unwrap().to_string();
    let e3 = sign_string_ent(3).unwrap().block_word();
    let s1 = sign_string_sigma(1).unwrap().to_string();
    c.check(e1 == "+--+", format!("Ent_1 = {e1}"));
    c.check(e2 == "+--+-++--++-+--+", format!("Ent_2 = {e2}"));
    c.check(
        e3.as_deref() == Some("PNNPNPPNNPPNPNNP"),
        format!("Ent_3 blocks = {e3:?}"),
    );
    c.check(s1 == "-++-", format!("sigma_1 = {s1}"));
    c
}

fn ent_sigma_identity() -> Criterion {
    let mut c = Criterion::new(3, "Ent_n = ((-1)^n / 2) sigma_y^(2n): strings n <= 13, dense n <= 5");
    let start = Instant::now();
    for n in 1..=13u32 {
        let r = verify_theorem2(n).unwrap();
        c.check(
            r.string_pass,
            format!("n = {n}: string mismatch at {:?}", r.string_first_mismatch),
        );
        c.check(
            r.chi_pass,
            format!("n = {n}: recursion vs parity mismatch at {:?}", r.chi_first_mismatch),
        );
        match (&r.dense, n <= MAX_DENSE_N) {
            (Some(d), true) => c.check(d.pass, format!("n = {n}: dense mismatch at {:?}", d.first_mismatch)),
            (None, true) => c.check(false, format!("n = {n}: dense check missing")),
            _ => {}
        }
    }
    c.within(start.elapsed(), Duration::from_secs(30));
    c
}

fn tangle_identity() -> Criterion {
    let mut c = Criterion::new(
        4,
        "4|hdet|^2 equals the spin-flip tangle on 200 states per size, 2n in {2,4,6}",
    );
    let start = Instant::now();
    let mut rng = seeded_rng(4);
    let mut worst = 0.0f64;
    for qubits in [2, 4, 6] {
        for _ in 0..200 {
            let s = random_state_from(&mut rng, qubits).unwrap();
            let lhs = 4.0 * hdet_fast(&s).unwrap().norm_sqr();
            let rhs = n_tangle(&s, TangleRoute::SpinFlip).unwrap();
            worst = worst.max((lhs - rhs).abs());
        }
    }
    c.note(format!("max deviation {worst:.3e}"));
    c.check(worst <= 1e-10, format!("max deviation {worst:.3e} > 1e-10"));
    c.within(start.elapsed(), Duration::from_secs(10));
    c
}

fn sl2_invariance() -> Criterion {
    let mut c = Criterion::new(5, "hdet invariant under SL(2) tuples, 100 pairs per size, 2n in {2,4}");
    let mut rng = seeded_rng(5);
    let mut worst = 0.0f64;
    for qubits in [2usize, 4] {
        for _ in 0..100 {
            let h = state_to_hypermatrix(&random_state_from(&mut rng, qubits).unwrap());
            let mats: Vec<_> = (0..qubits).map(|_| random_sl2_from(&mut rng)).collect();
            let before = hdet_reduced(&h).unwrap();
            let after = hdet_reduced(&multilinear_multiply(&mats, &h).unwrap()).unwrap();
            worst = worst.max((after - before).norm() / before.norm());
        }
    }
    c.note(format!("max relative change {worst:.3e}"));
    c.check(worst <= 1e-9, format!("max relative change {worst:.3e} > 1e-9"));
    c
}

fn hdet_oracles() -> Criterion {
    let mut c = Criterion::new(6, "general = reduced = fast on 4 qubits; odd order vanishes");
    let mut rng = seeded_rng(6);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let s = random_state_from(&mut rng, 4).unwrap();
        let h = state_to_hypermatrix(&s);
        let (g, r, f) = (
            hdet_general(&h).unwrap(),
            hdet_reduced(&h).unwrap(),
            hdet_fast(&s).unwrap(),
        );
        worst = worst.max((g - r).norm()).max((f - r).norm()).max((g - f).norm());
    }
    let mut odd = 0.0f64;
    for _ in 0..50 {
        let h = state_to_hypermatrix(&random_state_from(&mut rng, 3).unwrap());
        odd = odd.max(hdet_general(&h).unwrap().norm());
    }
    c.note(format!(
        "max pairwise difference {worst:.3e}, max |hdet| in order 3 {odd:.3e}"
    ));
    c.check(worst <= 1e-12, format!("forms differ by {worst:.3e}"));
    c.check(odd <= 1e-12, format!("order-3 hdet reaches {odd:.3e}"));
    c
}

fn hosvd_invariants() -> Criterion {
    let mut c = Criterion::new(7, "HOSVD invariants on 200 states, n <= 6");
    let mut rng = seeded_rng(7);
    let (mut recon, mut ortho, mut mass, mut lu) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut ordered = true;
    for i in 0..200 {
        let n = 1 + i % 6;
        let s = random_state_from(&mut rng, n).unwrap();
        let h = state_to_hypermatrix(&s);
        let r = hosvd(&h).unwrap();
        recon = recon.max(
            multilinear_multiply(&r.factors, &r.core)
                .unwrap()
                .max_abs_diff(&h)
                .unwrap(),
        );
        for k in 0..n {
            let rows = k_mode_unfold(&r.core, k + 1).unwrap();
            let g = rows.matmul(&rows.adjoint()).unwrap();
            ortho = ortho.max(g.get(0, 1).norm());
            let sv = &r.mode_svals[k];
            ordered &= sv[0] >= sv[1] && sv[1] >= 0.0;
            ordered &=
                (g.get(0, 0).re - sv[0] * sv[0]).abs() <= 1e-10 && (g.get(1, 1).re - sv[1] * sv[1]).abs() <= 1e-10;
            mass = mass.max((g.get(0, 0).re + g.get(1, 1).re - 1.0).abs());
        }
        let us: Vec<_> = (0..n).map(|_| random_su2_from(&mut rng)).collect();
        let moved = apply_local_unitaries(&s, &us).unwrap();
        let (a, b) = (
            lu_fingerprint(&h).unwrap(),
            lu_fingerprint(&state_to_hypermatrix(&moved)).unwrap(),
        );
        for (x, y) in a.iter().flatten().zip(b.iter().flatten()) {
            lu = lu.max((x - y).abs());
        }
    }
    c.note(format!(
        "reconstruction {recon:.3e}, all-orthogonality {ortho:.3e}, slice mass {mass:.3e}, LU drift {lu:.3e}"
    ));
    c.check(recon <= 1e-10, format!("reconstruction error {recon:.3e}"));
    c.check(ortho <= 1e-10, format!("all-orthogonality residual {ortho:.3e}"));
    c.check(ordered, "slice norms not ordered or not equal to singular values");
    c.check(mass <= 1e-10, format!("slice mass off by {mass:.3e}"));
    c.check(lu <= 1e-9, format!("fingerprint moved by {lu:.3e} under SU(2) action"));
    c
}

fn known_tangles() -> Criterion {
    let mut c = Criterion::new(8, "tangles of Bell, GHZ_4 and basis product states");
    // the enumeration oracle: 4|hdet_reduced|^2
    let oracle = |s: &QubitState| 4.0 * hdet_reduced(&state_to_hypermatrix(s)).unwrap().norm_sqr();
    let both = |s: &QubitState| {
        [
            oracle(s),
            n_tangle(s, TangleRoute::SpinFlip).unwrap(),
            n_tangle(s, TangleRoute::Hdet).unwrap(),
        ]
    };
    let bell = parse_ket("1/sqrt(2)|00> + 1/sqrt(2)|11>").unwrap();
    let ghz = parse_ket("1/sqrt(2)|0000> + 1/sqrt(2)|1111>").unwrap();
    for (name, s) in [("Bell", &bell), ("GHZ_4", &ghz)] {
        let t = both(s);
        c.note(format!("{name}: oracle {}, spin-flip {}, hdet {}", t[0], t[1], t[2]));
        c.check(
            t.iter().all(|x| (x - 1.0).abs() <= 1e-10),
            format!("{name} tangles {t:?}"),
        );
    }
    let mut worst = 0.0f64;
    for qubits in [2usize, 4, 6] {
        for index in 0..1usize << qubits {
            let s = QubitState::basis(qubits, index).unwrap();
            worst = both(&s).iter().fold(worst, |m, x| m.max(x.abs()));
        }
    }
    c.note(format!("basis states, 2n in {{2,4,6}}: max tangle {worst:.3e}"));
    c.check(worst <= 1e-10, format!("basis-state tangle {worst:.3e}"));
    c
}

fn bench_sanity() -> Criterion {
    let mut c = Criterion::new(9, "bench at 2n = 8: fast and reduced agree, fast at most 2x slower");
    // warm-up pass, then the measured run
    let _ = compare_hdet(4, 50, 9).unwrap();
    let r = compare_hdet(4, 500, 9).unwrap();
    c.note(format!(
        "fast {:?}/state, reduced {:?}/state, ratio {:.3}, max |diff| {:.3e}",
        r.fast_mean,
        r.reduced_mean,
        r.ratio(),
        r.max_abs_diff
    ));
    c.check(r.max_abs_diff <= 1e-12, format!("max |diff| {:.3e}", r.max_abs_diff));
    c.check(r.ratio() <= 2.0, format!("fast/reduced time ratio {:.3}", r.ratio()));
    c
}

fn main() {
    let results = [
        example_states(),
        sign_strings(),
        ent_sigma_identity(),
        tangle_identity(),
        sl2_invariance(),
        hdet_oracles(),
        hosvd_invariants(),
        known_tangles(),
        bench_sanity(),
    ];
    let passed = results.iter().map(Criterion::report).filter(|&p| p).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
