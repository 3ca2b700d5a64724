//! Acceptance run. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails. All comparisons are exact; only runtimes have limits.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use kahlergrad::bochner::{kirchberg_bound, verify_dolbeault};
use kahlergrad::cli::{Family, Render, Suite, VerifyOutput};
use kahlergrad::clifford::{
    build_clifford_system, verify_adjoint_pair, verify_cross_relations, verify_spinor_model,
    verify_system,
};
use kahlergrad::envalg::{verify_transpose_relations, CentralData, Gl};
use kahlergrad::gtrep::{build_representation, check_casimir_scalars, evaluate};
use kahlergrad::weights::{
    casimir_eigenvalue, conformal_table, dominant_weights, tilde_casimir_eigenvalue, HighestWeight,
};
use kahlergrad::{Budget, Rational, RationalMatrix, Sign, VerificationReport};

const SPINOR_TABLE_LIMIT: Duration = Duration::from_secs(1);
const CASIMIR_LIMIT: Duration = Duration::from_secs(120);
const ENVALG_LIMIT: Duration = Duration::from_secs(300);
const CLIFFORD_LIMIT: Duration = Duration::from_secs(600);
const KIRCHBERG_LIMIT: Duration = Duration::from_secs(1);

/// Dominant weights of rank at most 3 with entries in [-2, 2].
const FAMILY_M: usize = 3;
const FAMILY_BOUND: i64 = 2;
const CASIMIR_Q: u32 = 4;
const ENVALG_Q: u32 = 3;
const CROSS_Q: u32 = 2;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn from_report(r: &VerificationReport) -> Outcome {
    let first = r
        .failures()
        .next()
        .map(|f| format!("; first failure {} {}", f.identity, f.params));
    outcome(
        r.all_pass() && r.skipped() == 0 && r.passed() > 0,
        format!(
            "{} passed, {} failed, {} n/a{}",
            r.passed(),
            r.failed(),
            r.skipped(),
            first.unwrap_or_default()
        ),
    )
}

fn family() -> Vec<HighestWeight> {
    (1..=FAMILY_M)
        .flat_map(|m| dominant_weights(m, -FAMILY_BOUND, FAMILY_BOUND))
        .collect()
}

fn spinor_closed_forms() -> Outcome {
    let mut rows = 0;
    for m in 2..=6usize {
        let mi = m as i64;
        for p in 0..=m {
            let pi = p as i64;
            let rho = HighestWeight::exterior(m, p);
            let plus = conformal_table(&rho, Sign::Plus).unwrap();
            let minus = conformal_table(&rho, Sign::Minus).unwrap();
            // at p = 0 the index +1 is +(p+1), at p = m the index -m is -p
            let mut expect: Vec<(Sign, usize, i64, Rational)> = Vec::new();
            if p >= 1 {
                expect.push((Sign::Plus, 1, -1, Rational::new(pi * (mi + 1), pi + 1)));
                expect.push((Sign::Minus, p, mi - pi + 1, Rational::new(pi, mi - pi + 1)));
            }
            if p < m {
                expect.push((Sign::Plus, p + 1, pi, Rational::new(mi - pi, pi + 1)));
                expect.push((
                    Sign::Minus,
                    m,
                    0,
                    Rational::new((mi + 1) * (mi - pi), mi - pi + 1),
                ));
            }
            let expect_len = expect.len();
            for (sign, i, w, g) in expect {
                let t = if sign == Sign::Plus { &plus } else { &minus };
                if t.w(i) != w || *t.gamma(i) != g {
                    return outcome(
                        false,
                        format!(
                            "m={m} p={p} {}{i}: w={} gamma={}",
                            sign.symbol(),
                            t.w(i),
                            t.gamma(i)
                        ),
                    );
                }
                rows += 1;
            }
            // every other shift has gamma = 0
            let nonzero = (1..=m).filter(|&i| !plus.gamma(i).is_zero()).count()
                + (1..=m).filter(|&i| !minus.gamma(i).is_zero()).count();
            if nonzero != expect_len {
                return outcome(
                    false,
                    format!("m={m} p={p}: {nonzero} nonzero gammas, expected {expect_len}"),
                );
            }
        }
    }
    outcome(true, format!("{rows} closed-form entries, m=2..6"))
}

fn casimir_matrices() -> Outcome {
    let mut checks = 0;
    let mut report = VerificationReport::new();
    for m in 1..=FAMILY_M {
        let mut gl = Gl::new(m, Budget::default()).unwrap();
        let e = gl.e_power_table(CASIMIR_Q, false).unwrap();
        let et = gl.e_power_table(CASIMIR_Q, true).unwrap();
        let central = CentralData::new(&mut gl, &e, &et).unwrap();
        for rho in dominant_weights(m, -FAMILY_BOUND, FAMILY_BOUND) {
            let rep = build_representation(&rho, Budget::default()).unwrap();
            let n = rep.dim();
            for q in 0..=CASIMIR_Q {
                for (tilde, elem) in [
                    (false, &central.casimir[q as usize]),
                    (true, &central.tilde_casimir[q as usize]),
                ] {
                    let want = if tilde {
                        tilde_casimir_eigenvalue(&rho, q)
                    } else {
                        casimir_eigenvalue(&rho, q)
                    }
                    .unwrap();
                    let got = evaluate(&rep, elem).unwrap();
                    if got != RationalMatrix::scalar(n, &want) {
                        return outcome(
                            false,
                            format!("rho={rho} q={q} tilde={tilde}: not the scalar {want}"),
                        );
                    }
                    checks += 1;
                }
            }
            let c2 = casimir_eigenvalue(&rho, 2).unwrap();
            if c2 != Rational::from_int(rho.quadratic_casimir()) {
                return outcome(
                    false,
                    format!(
                        "rho={rho}: c_2 = {c2}, quadratic formula {}",
                        rho.quadratic_casimir()
                    ),
                );
            }
            report.extend(check_casimir_scalars(&rep, CASIMIR_Q).unwrap());
            checks += 1;
        }
    }
    let r = from_report(&report);
    outcome(
        r.ok,
        format!("{checks} evaluations; trace form {}", r.detail),
    )
}

fn transpose_relations() -> Outcome {
    let mut report = VerificationReport::new();
    for m in 1..=FAMILY_M {
        match verify_transpose_relations(m, ENVALG_Q, Budget::default()) {
            Ok(r) => report.extend(r),
            Err(e) => return outcome(false, format!("m={m}: {e}")),
        }
    }
    from_report(&report)
}

fn clifford_suite() -> Outcome {
    let mut report = VerificationReport::new();
    for rho in family() {
        let src = build_representation(&rho, Budget::default()).unwrap();
        let plus = build_clifford_system(&src, Sign::Plus).unwrap();
        let minus = build_clifford_system(&src, Sign::Minus).unwrap();
        let q = rho.m() as u32;
        let mut step = || -> Result<(), kahlergrad::clifford::CliffordError> {
            report.extend(verify_system(&plus, q)?);
            report.extend(verify_system(&minus, q)?);
            report.extend(verify_cross_relations(&plus, &minus, CROSS_Q)?);
            for sys in [&plus, &minus] {
                for i in sys.table.valid_indices() {
                    report.extend(verify_adjoint_pair(sys, i)?);
                }
            }
            Ok(())
        };
        if let Err(e) = step() {
            return outcome(false, format!("rho={rho}: {e}"));
        }
    }
    let ranks = report.of("projector-rank").count();
    let r = from_report(&report);
    outcome(
        r.ok && ranks > 0,
        format!("{}; {ranks} projector-rank checks", r.detail),
    )
}

fn spinor_model() -> Outcome {
    let mut report = VerificationReport::new();
    for m in 2..=4 {
        match verify_spinor_model(m, Budget::default()) {
            Ok(r) => report.extend(r),
            Err(e) => return outcome(false, format!("m={m}: {e}")),
        }
        report.extend(verify_dolbeault(m).unwrap());
    }
    let needed = [
        "spinor-table",
        "spinor-clifford-relation",
        "spinor-contraction",
        "spinor-creation",
    ];
    if let Some(missing) = needed.iter().find(|id| report.of(id).count() == 0) {
        return outcome(false, format!("no {missing} checks ran"));
    }
    from_report(&report)
}

fn kirchberg() -> Outcome {
    for m in 2..=50usize {
        let b = kirchberg_bound(m).unwrap();
        let mi = m as i64;
        let closed = if m.is_multiple_of(2) {
            Rational::new(mi, mi - 1)
        } else {
            Rational::new(mi + 1, mi)
        };
        if b.bound_coefficient != closed {
            return outcome(false, format!("m={m}: {} vs {closed}", b.bound_coefficient));
        }
        let value = |p: i64| {
            Rational::new(2 * p + 2, 2 * p + 1)
                .max(Rational::new(2 * mi - 2 * p, 2 * mi - 2 * p - 1))
        };
        let w = b.witness_p as i64;
        if value(w) != b.bound_coefficient || (0..w).any(|p| value(p) <= b.bound_coefficient) {
            return outcome(
                false,
                format!("m={m}: witness p={w} is not the first minimizer"),
            );
        }
        if (0..mi).any(|p| value(p) < b.bound_coefficient) {
            return outcome(false, format!("m={m}: bound is not the minimum"));
        }
    }
    outcome(true, "m=2..50")
}

fn bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kahlergrad"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn golden_files() -> Outcome {
    let cases: [(&[&str], &str); 3] = [
        (
            &["identity", "1,0", "--q", "0", "--json"],
            "identity_1_0_q0.json",
        ),
        (
            &["identity", "1,0", "--q", "1", "--json"],
            "identity_1_0_q1.json",
        ),
        (
            &["identity", "1,0", "--weitzenboeck", "--json"],
            "identity_1_0_weitzenboeck.json",
        ),
    ];
    for (args, file) in cases {
        let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", file]
            .iter()
            .collect();
        let want = std::fs::read_to_string(&path).unwrap_or_default();
        let (code, got) = bin(args);
        if code != 0 || got != want {
            return outcome(false, format!("{file}: exit {code}, output differs"));
        }
    }
    outcome(true, format!("{} files", cases.len()))
}

fn cli_contract() -> Outcome {
    let args = [
        "verify", "--m", "2", "--bound", "2", "--q", "2", "--suite", "all",
    ];
    let (code, text) = bin(&args);
    if code != 0 {
        return outcome(
            false,
            format!(
                "verify exited {code}: {}",
                text.lines().last().unwrap_or("")
            ),
        );
    }
    let mut json_args = args.to_vec();
    json_args.push("--json");
    let (code, out) = bin(&json_args);
    let Ok(parsed) = serde_json::from_str::<VerifyOutput>(&out) else {
        return outcome(false, "verify --json does not parse");
    };
    if code != 0 || parsed.json() + "\n" != out || parsed.failed != 0 {
        return outcome(false, "verify --json is not byte-stable");
    }
    let (again_code, again) = bin(&json_args);
    if again_code != 0 || again != out {
        return outcome(false, "repeated runs differ");
    }
    let library = kahlergrad::cli::run_family(
        &Family {
            m_min: 2,
            m_max: 2,
            bound: 2,
            q_max: 2,
        },
        &Suite::expand(&[Suite::All]),
        Budget::default(),
        0,
    );
    if library.json() + "\n" != out {
        return outcome(false, "binary and library reports differ");
    }
    let usage = [
        (&["identity", "1,1", "--weitzenboeck"][..], 2),
        (&["weights", "0,1"], 2),
        (&["verify", "--m", "3-2"], 2),
        (&["nonsense"], 2),
        (&["--help"], 0),
    ];
    for (a, want) in usage {
        let (c, _) = bin(a);
        if c != want {
            return outcome(false, format!("{a:?} exited {c}, expected {want}"));
        }
    }
    outcome(
        true,
        format!(
            "{} checks passed, exit codes 0/2 as specified",
            parsed.passed
        ),
    )
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "exterior-power weight table matches closed forms",
            Some(SPINOR_TABLE_LIMIT),
            spinor_closed_forms,
        ),
        (
            "Casimir elements act by predicted scalars",
            Some(CASIMIR_LIMIT),
            casimir_matrices,
        ),
        (
            "transpose relations hold in the enveloping algebra",
            Some(ENVALG_LIMIT),
            transpose_relations,
        ),
        (
            "Clifford system identities and projector ranks",
            Some(CLIFFORD_LIMIT),
            clifford_suite,
        ),
        ("spinor model on (0,p)-forms", None, spinor_model),
        (
            "Kirchberg bound closed form and witness",
            Some(KIRCHBERG_LIMIT),
            kirchberg,
        ),
        ("identity output matches golden files", None, golden_files),
        (
            "verify batch exit codes and JSON stability",
            None,
            cli_contract,
        ),
    ];
    let mut failed = 0;
    for (label, limit, f) in criteria {
        let start = Instant::now();
        let mut o = f();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > limit {
                o.ok = false;
                o.detail = format!("{} (over the {:.0?} limit)", o.detail, limit);
            }
        }
        if !o.ok {
            failed += 1;
        }
        println!(
            "{} {label} [{:.2?}]: {}",
            if o.ok { "PASS" } else { "FAIL" },
            elapsed,
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
