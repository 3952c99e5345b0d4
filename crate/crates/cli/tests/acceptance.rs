//! Acceptance criteria. Each test prints one `PASS` or `FAIL` line with its
//! runtime, written past the test harness's output capture.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use qsi::fixtures::{build_fixture, verify_example, ExampleReport, FixtureId, VERIFY_BOX};
use qsi::linalg::Rationals;
use qsi::quiver::{DimensionVector, Quiver};
use qsi::rep::{
    derive_seed, ext_dim, generic_ext_cokernel, generic_hom_ext, hom_dim, orbit_codim_hereditary,
    random_rep, sample_rng, Sampling,
};
use qsi::roots::{
    canonical_decomposition, classify_root, prehomogeneity_report, verify_canonical, Conclusion,
    RootClass,
};
use qsi::si::{jacobian_rank, minimal_double_weight, weight_remainder, weight_space_dim_symbolic};

type Outcome = Result<String, String>;

fn criterion(id: u32, name: &str, budget: Duration, body: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let outcome = match outcome {
        Ok(detail) if elapsed > budget => {
            Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}"))
        }
        other => other,
    };
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    let line = format!("{tag} [{id}] {name} ({elapsed:.2?}): {detail}\n");
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    if let Err(e) = outcome {
        panic!("criterion {id} failed: {e}");
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn expect_values(report: &ExampleReport, expected: &[(&str, Value)]) -> Result<(), String> {
    for (key, want) in expected {
        let got = report.value(key);
        ensure(got == Some(want), || {
            format!("{}: {key} = {got:?}, expected {want}", report.fixture)
        })?;
    }
    Ok(())
}

#[test]
fn c1_example_two_end_to_end() {
    criterion(1, "ex2 end to end", Duration::from_secs(10), || {
        let r = verify_example(FixtureId::Ex2, 0).map_err(|e| e.to_string())?;
        let failing: Vec<&str> = r
            .claims
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.id.as_str())
            .collect();
        ensure(r.passed, || format!("failing claims {failing:?}"))?;
        expect_values(
            &r,
            &[
                ("samples", json!(20)),
                ("bricks", json!(20)),
                ("orbit_dim", json!(4)),
                ("component_dim", json!(5)),
                ("codim", json!(1)),
                ("count", json!(3)),
                ("si_codim", json!(1)),
                ("dim_chi", json!(2)),
                ("dim_2chi", json!(3)),
                ("multiplicity_free", json!(false)),
                ("witness", json!([1, 0, 0, 0, -1])),
            ],
        )?;
        Ok("20 bricks, orbit 4 in component 5, chi count 3, dims 2 and 3, witness chi".into())
    });
}

#[test]
fn c2_example_three_family() {
    criterion(
        2,
        "ex3 family n = 2..5",
        Duration::from_secs(4 * 30),
        || {
            let mut slowest = Duration::ZERO;
            for n in 2..=5usize {
                let start = Instant::now();
                let r =
                    verify_example(FixtureId::Ex3 { n }, n as u64).map_err(|e| e.to_string())?;
                ensure(r.passed, || format!("n = {n}: {r:?}"))?;
                expect_values(
                    &r,
                    &[
                        ("count", json!(n + 2)),
                        ("codim", json!(n)),
                        ("jacobian_rank", json!(n)),
                        ("dim_chi", json!(2)),
                        ("samples", json!(10)),
                    ],
                )?;
                let lambdas = r.value("lambdas").cloned();
                ensure(
                    lambdas.is_some() && lambdas == r.value("phi").cloned(),
                    || format!("n = {n}: phi differs from lambda"),
                )?;
                let t = start.elapsed();
                ensure(t < Duration::from_secs(30), || {
                    format!("n = {n} took {t:.2?}")
                })?;
                slowest = slowest.max(t);
            }
            Ok(format!(
                "count n+2, codim n, rank n, dim 2, phi = lambda; slowest n took {slowest:.2?}"
            ))
        },
    );
}

#[test]
fn c3_example_one() {
    criterion(3, "ex1 band modules", Duration::from_secs(5), || {
        let r = verify_example(FixtureId::Ex1, 0).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("{r:?}"))?;
        expect_values(
            &r,
            &[
                ("end_dim", json!(2)),
                ("pairs", json!(5)),
                ("non_isomorphic", json!(5)),
                ("si_trivial", json!(true)),
            ],
        )?;
        Ok("relations hold, End dim 2, 5 pairs non-isomorphic, SI trivial".into())
    });
}

fn quiver_file(name: &str) -> Quiver {
    let text =
        std::fs::read_to_string(common::root().join("fixtures").join(name)).expect("fixture file");
    qsi::quiver::BoundQuiver::from_json(&text)
        .expect("valid quiver")
        .quiver
}

#[test]
fn c4_hereditary_classification() {
    criterion(
        4,
        "hereditary classification",
        Duration::from_secs(10),
        || {
            let s = Sampling::default();
            let kr = quiver_file("kronecker.json");
            let one_one = DimensionVector(vec![1, 1]);
            let class = classify_root(&kr, &one_one, &s).map_err(|e| e.to_string())?;
            ensure(class == RootClass::Isotropic, || {
                format!("Kronecker (1,1): {class}")
            })?;
            let r = prehomogeneity_report(&kr, &one_one, &s).map_err(|e| e.to_string())?;
            ensure(
                r.almost_prehomogeneous && r.conclusion == Conclusion::CompleteIntersection,
                || format!("Kronecker: {r:?}"),
            )?;

            let a2 = quiver_file("a2.json");
            let class = classify_root(&a2, &one_one, &s).map_err(|e| e.to_string())?;
            ensure(class == RootClass::Real, || format!("A2 (1,1): {class}"))?;
            let r = prehomogeneity_report(&a2, &one_one, &s).map_err(|e| e.to_string())?;
            ensure(
                r.prehomogeneous && r.conclusion == Conclusion::PolynomialRing,
                || format!("A2: {r:?}"),
            )?;

            let d4 = build_fixture(FixtureId::Ex2TildeD4).map_err(|e| e.to_string())?;
            let r =
                prehomogeneity_report(&d4.bound.quiver, &d4.dim, &s).map_err(|e| e.to_string())?;
            ensure(r.almost_prehomogeneous, || format!("D4: {r:?}"))?;
            Ok("Kronecker isotropic and complete intersection, A2 real and polynomial, D4 almost prehomogeneous".into())
        },
    );
}

/// Deterministic stream of small integers from a seed.
struct Draws {
    seed: u64,
    k: u64,
}

impl Draws {
    fn below(&mut self, n: u64) -> u64 {
        self.k += 1;
        derive_seed(self.seed, self.k) % n
    }
}

/// Acyclic quiver on at most 4 vertices with at most 5 arrows, each arrow
/// going from a lower to a higher vertex, and a dimension vector with
/// entries at most 3.
fn random_instance(seed: u64) -> (Quiver, DimensionVector, DimensionVector) {
    let mut d = Draws { seed, k: 0 };
    let n = 2 + d.below(3) as usize;
    let r = 1 + d.below(5) as usize;
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let arrows: Vec<(String, String, String)> = (0..r)
        .map(|i| {
            let t = d.below(n as u64 - 1) as usize;
            let h = t + 1 + d.below((n - t - 1) as u64) as usize;
            (format!("a{i}"), vertices[t].clone(), vertices[h].clone())
        })
        .collect();
    let q = Quiver::new(&vertices, &arrows).expect("valid random quiver");
    let mut dim = || loop {
        let v = DimensionVector((0..n).map(|_| d.below(4) as u32).collect());
        if !v.is_zero() {
            return v;
        }
    };
    let (a, b) = (dim(), dim());
    (q, a, b)
}

/// `<a, b> = sum_x a_x b_x - sum_{arrows} a_tail b_head`.
fn euler_oracle(q: &Quiver, a: &DimensionVector, b: &DimensionVector) -> i64 {
    let vertex: i64 =
        a.0.iter()
            .zip(&b.0)
            .map(|(&x, &y)| x as i64 * y as i64)
            .sum();
    let arrow: i64 = q
        .arrows()
        .iter()
        .map(|ar| a.0[ar.tail] as i64 * b.0[ar.head] as i64)
        .sum();
    vertex - arrow
}

#[test]
fn c5_euler_hom_ext_consistency() {
    criterion(
        5,
        "Euler, Hom and Ext consistency on 50 quivers",
        Duration::from_secs(120),
        || {
            for i in 0..50u64 {
                let (q, a, b) = random_instance(1000 + i);
                let euler = euler_oracle(&q, &a, &b);
                let mut rng = sample_rng(i, 0);
                let (v, w) = (random_rep(&q, &a, &mut rng), random_rep(&q, &b, &mut rng));
                let hom = hom_dim(&Rationals, &v, &w).map_err(|e| e.to_string())? as i64;
                let ext = ext_dim(&Rationals, &v, &w).map_err(|e| e.to_string())? as i64;
                ensure(hom - ext == euler, || {
                    format!("instance {i}: hom {hom} - ext {ext} != <a,b> {euler}")
                })?;

                let s = Sampling::with_seed(i);
                let (gh, ge) = generic_hom_ext(&q, &a, &b, &s).map_err(|e| e.to_string())?;
                let gc = generic_ext_cokernel(&q, &a, &b, &s).map_err(|e| e.to_string())?;
                ensure(gh as i64 - gc as i64 == euler && ge == gc, || {
                    format!("instance {i}: generic hom {gh}, ext {ge}, cokernel {gc}")
                })?;

                let codim = orbit_codim_hereditary(&Rationals, &v).map_err(|e| e.to_string())?;
                let self_ext = ext_dim(&Rationals, &v, &v).map_err(|e| e.to_string())?;
                ensure(codim == self_ext, || {
                    format!("instance {i}: orbit codim {codim} != ext(V,V) {self_ext}")
                })?;
            }
            Ok("50 instances, zero mismatches".into())
        },
    );
}

#[test]
fn c6_canonical_decomposition() {
    criterion(
        6,
        "canonical decomposition on 20 instances",
        Duration::from_secs(120),
        || {
            let mut instances: Vec<(Quiver, DimensionVector)> = (0..20u64)
                .map(|i| {
                    let (q, beta, _) = random_instance(5000 + i);
                    (q, beta)
                })
                .collect();
            // Named instances on both sides of the equivalence, checked in
            // addition to the random ones.
            let kr = quiver_file("kronecker.json");
            let d4 = build_fixture(FixtureId::Ex2TildeD4).map_err(|e| e.to_string())?;
            instances.push((kr.clone(), DimensionVector(vec![1, 1])));
            instances.push((kr.clone(), DimensionVector(vec![2, 2])));
            instances.push((kr, DimensionVector(vec![2, 3])));
            instances.push((d4.bound.quiver.clone(), d4.dim.clone()));
            instances.push((
                d4.bound.quiver.clone(),
                DimensionVector(vec![1, 1, 1, 1, 1]),
            ));
            let mut almost = 0;
            for (i, (q, beta)) in instances.into_iter().enumerate() {
                let i = i as u64;
                let s = Sampling::with_seed(i);
                let dec = canonical_decomposition(&q, &beta, &s)
                    .map_err(|e| format!("instance {i} {beta}: {e}"))?;
                let check =
                    verify_canonical(&q, &dec.parts, &beta, &s).map_err(|e| e.to_string())?;
                ensure(check.passed, || {
                    format!("instance {i} {beta}: {:?}", check.reason)
                })?;
                let sum = DimensionVector::sum(beta.len(), &dec.parts);
                ensure(sum == beta, || {
                    format!("instance {i}: parts sum to {sum}, not {beta}")
                })?;

                let mut rng = sample_rng(s.seed, 77);
                let codim = (0..3)
                    .map(|_| {
                        orbit_codim_hereditary(&Rationals, &random_rep(&q, &beta, &mut rng))
                            .expect("acyclic")
                    })
                    .min()
                    .expect("three draws");
                let classes = &check.certificate.classes;
                let one_isotropic = classes
                    .iter()
                    .filter(|&&c| c == RootClass::Isotropic)
                    .count()
                    == 1
                    && classes
                        .iter()
                        .all(|&c| matches!(c, RootClass::Isotropic | RootClass::Real));
                ensure((codim == 1) == one_isotropic, || {
                    format!("instance {i} {beta}: codim {codim}, classes {classes:?}")
                })?;
                almost += usize::from(one_isotropic);
            }
            Ok(format!("20 random and 5 named instances certified, codim 1 iff one isotropic part ({almost} such)"))
        },
    );
}

#[test]
fn c7_si_ring_laws() {
    criterion(
        7,
        "semi-invariant ring laws on fixtures",
        Duration::from_secs(60),
        || {
            let ids = [
                FixtureId::Ex2,
                FixtureId::Ex3 { n: 2 },
                FixtureId::Ex3 { n: 3 },
                FixtureId::Ex3 { n: 4 },
                FixtureId::Ex3 { n: 5 },
            ];
            for id in ids {
                let f = build_fixture(id).map_err(|e| e.to_string())?;
                let sys = f.system.as_ref().expect("system");
                let rep = minimal_double_weight(sys, VERIFY_BOX).map_err(|e| e.to_string())?;
                let rank = jacobian_rank(sys, 0);
                ensure(rep.count == rank + 2 && rep.codim == rank, || {
                    format!(
                        "{id}: count {}, codim {}, rank {rank}",
                        rep.count, rep.codim
                    )
                })?;
                for (i, p) in rep.monomials.iter().enumerate() {
                    for q in &rep.monomials[i + 1..] {
                        ensure(p.coprime(q), || {
                            format!(
                                "{id}: {} and {} share a generator",
                                sys.display(p),
                                sys.display(q)
                            )
                        })?;
                    }
                }
                for k in 1..=3u32 {
                    let sigma = rep.chi.scale(k as i64);
                    let symbolic = weight_space_dim_symbolic(sys, &sigma, VERIFY_BOX);
                    let predicted = weight_remainder(&sigma, &rep, sys, VERIFY_BOX)
                        .map_err(|e| e.to_string())?
                        .predicted_dim;
                    ensure(
                        predicted == Some(k as usize + 1) && symbolic == k as usize + 1,
                        || {
                            format!("{id}: sigma = {k} chi, predicted {predicted:?}, symbolic {symbolic}")
                        },
                    )?;
                }
            }
            Ok("count = codim + 2, coprime pairs, dim SI_{k chi} = k + 1 for k <= 3".into())
        },
    );
}

#[test]
fn c8_cli_determinism() {
    criterion(
        8,
        "byte-identical JSON for a fixed seed",
        Duration::from_secs(120),
        || {
            let runs: &[&[&str]] = &[
                &[
                    "euler",
                    "--quiver",
                    "fixtures/kronecker.json",
                    "--dim",
                    "2,1",
                    "--json",
                ],
                &[
                    "classify",
                    "--quiver",
                    "fixtures/kronecker.json",
                    "--dim",
                    "1,1",
                    "--seed",
                    "7",
                    "--json",
                ],
                &[
                    "decompose",
                    "--quiver",
                    "fixtures/d4.json",
                    "--dim",
                    "1,1,1,1,2",
                    "--seed",
                    "3",
                    "--json",
                ],
                &[
                    "report",
                    "--quiver",
                    "fixtures/kronecker.json",
                    "--dim",
                    "1,1",
                    "--seed",
                    "2",
                    "--json",
                ],
                &[
                    "si-weights",
                    "--system",
                    "fixtures/ex2.json",
                    "--box",
                    "3",
                    "--json",
                ],
                &["verify-example", "ex2", "--seed", "11", "--json"],
                &["verify-example", "ex3", "--n", "3", "--seed", "1", "--json"],
                &[
                    "orbit",
                    "--quiver",
                    "fixtures/kronecker.json",
                    "--dim",
                    "2,3",
                    "--seed",
                    "5",
                    "--json",
                ],
            ];
            for args in runs {
                let (first, second) = (common::qsi(args), common::qsi(args));
                ensure(first.code == 0, || {
                    format!("{args:?} exited {}: {}", first.code, first.stderr)
                })?;
                ensure(first.stdout == second.stdout, || {
                    format!("{args:?} differs between runs")
                })?;
            }
            Ok(format!("{} invocations repeated byte for byte", runs.len()))
        },
    );
}
