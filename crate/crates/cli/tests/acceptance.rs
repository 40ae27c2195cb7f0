//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any FAIL.

use std::process::Command;
use std::time::{Duration, Instant};

use mf_core::exactpoly::{factorial, Polynomial, Rational};
use mf_core::invariants::invariant_generators;
use mf_core::liealg::{build_classical, jordan_triple, principal_sl2, AlgebraKind};
use mf_core::shift::{bigraded_components, shift_derivative};
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

struct Run {
    code: i32,
    report: Value,
}

fn mfcheck(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_mfcheck"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        report: serde_json::from_slice(&out.stdout).unwrap_or(Value::Null),
    }
}

fn algebra_args(spec: &str) -> Vec<&str> {
    let (kind, size) = spec.split_once(':').unwrap();
    vec!["--type", kind, "--size", size]
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    ensure(took <= limit, || {
        format!(
            "{detail}; took {:.1}s, limit {}s",
            took.as_secs_f64(),
            limit.as_secs()
        )
    })?;
    Ok(format!("{detail} ({:.2}s)", took.as_secs_f64()))
}

const CLASSICAL: [(AlgebraKind, usize); 6] = [
    (AlgebraKind::Gl, 2),
    (AlgebraKind::Gl, 3),
    (AlgebraKind::Sl, 2),
    (AlgebraKind::Sl, 3),
    (AlgebraKind::So, 3),
    (AlgebraKind::Sp, 4),
];

fn structure_axioms() -> Check {
    for (kind, size) in CLASSICAL {
        timed(Duration::from_secs(1), || {
            let l = build_classical(kind, size).map_err(|e| e.to_string())?;
            ensure(l.jacobi_violation().is_none(), || {
                format!("{kind:?} {size}: Jacobi")
            })?;
            ensure(l.form_invariance_violation().is_none(), || {
                format!("{kind:?} {size}: form")
            })?;
            Ok(String::new())
        })?;
    }
    Ok("six algebras verified exactly".into())
}

fn index_values() -> Check {
    timed(Duration::from_secs(10), || {
        for (kind, size, want) in [
            (AlgebraKind::Sl, 2, 1),
            (AlgebraKind::Sl, 3, 2),
            (AlgebraKind::Gl, 3, 3),
        ] {
            let got = build_classical(kind, size).unwrap().index_of().index;
            ensure(got == want, || {
                format!("{kind:?} {size}: index {got}, want {want}")
            })?;
        }
        let gl3 = build_classical(AlgebraKind::Gl, 3).unwrap();
        for parts in [vec![3], vec![2, 1], vec![1, 1, 1]] {
            let t = jordan_triple(&gl3, &parts).map_err(|e| e.to_string())?;
            let (ge, _) = gl3.centralizer(&t.e).map_err(|e| e.to_string())?;
            let got = ge.index_of().index;
            ensure(got == 3, || format!("gl3^e {parts:?}: index {got}"))?;
        }
        Ok("sl2=1, sl3=2, gl3=3, gl3^e=3 for (3), (2,1), (1,1,1)".into())
    })
}

fn degree_sums() -> Check {
    // b needs the index, which criterion 2 already times; only the families are timed here.
    let algebras: Vec<_> = CLASSICAL
        .into_iter()
        .chain([
            (AlgebraKind::Gl, 4),
            (AlgebraKind::Sl, 4),
            (AlgebraKind::So, 5),
        ])
        .map(|(kind, size)| {
            let l = build_classical(kind, size).unwrap();
            let b = l.b();
            (l, b)
        })
        .collect();
    timed(Duration::from_secs(1), || {
        for (l, b) in &algebras {
            let fam = invariant_generators(l).map_err(|e| e.to_string())?;
            ensure(fam.degree_sum() as usize == *b, || {
                format!("{}: sum {} != b {b}", fam.algebra, fam.degree_sum())
            })?;
        }
        Ok(format!("{} families", algebras.len()))
    })
}

fn poisson_commutativity() -> Check {
    timed(Duration::from_secs(120), || {
        for alg in ["sl:2", "sl:3", "gl:3"] {
            for xi in ["e", "ef", "random-regular"] {
                let r = mfcheck(&[&["commute", "--xi", xi][..], &algebra_args(alg)].concat());
                let failures = r.report["result"]["commutativity"]["failures"]
                    .as_array()
                    .map(Vec::len);
                ensure(r.code == 0 && failures == Some(0), || {
                    format!("{alg} at {xi}: exit {}", r.code)
                })?;
            }
        }
        Ok("0 failing pairs in 9 runs".into())
    })
}

fn regular_sequences() -> Check {
    let mut out = Vec::new();
    for (alg, dim, limit) in [("sl:2", 1, 1), ("sl:3", 3, 300), ("gl:3", 3, 600)] {
        for xi in ["e", "random-regular"] {
            let d = timed(Duration::from_secs(limit), || {
                let r = mfcheck(&[&["regseq", "--xi", xi][..], &algebra_args(alg)].concat());
                let rep = &r.report["result"]["report"];
                ensure(
                    r.code == 0 && rep["verdict"] == "true" && rep["ideal_dimension"] == dim,
                    || {
                        format!(
                            "{alg} at {xi}: exit {}, dim {}",
                            r.code, rep["ideal_dimension"]
                        )
                    },
                )?;
                Ok(format!("{alg}@{xi} dim {dim}"))
            })?;
            out.push(d);
        }
    }
    Ok(out.join(", "))
}

fn nilpotent_cones() -> Check {
    for alg in ["sl:2", "sl:3", "gl:3"] {
        let r = mfcheck(&[&["regseq", "--nilcone"][..], &algebra_args(alg)].concat());
        ensure(
            r.code == 0 && r.report["result"]["report"]["verdict"] == "true",
            || format!("{alg}: exit {}", r.code),
        )?;
    }
    Ok("sl2, sl3, gl3 complete intersections".into())
}

fn bicone_dimension() -> Check {
    let small = timed(Duration::from_secs(30), || {
        let r = mfcheck(&["bicone", "--type", "sl", "--size", "2"]);
        ensure(
            r.code == 0 && r.report["result"]["ideal_dimension"] == 3,
            || format!("sl2: exit {}", r.code),
        )?;
        Ok("sl2 dim 3".into())
    })?;
    let r = mfcheck(&[
        "bicone",
        "--type",
        "sl",
        "--size",
        "3",
        "--timeout-secs",
        "120",
    ]);
    let large = match r.code {
        0 if r.report["result"]["ideal_dimension"] == 9 => "sl3 dim 9".to_string(),
        2 => "sl3 inconclusive within timeout".to_string(),
        c => {
            return Err(format!(
                "sl3: exit {c}, dim {}",
                r.report["result"]["ideal_dimension"]
            ))
        }
    };
    Ok(format!("{small}; {large}"))
}

fn bicone_fibers() -> Check {
    for (alg, dim) in [("sl:2", 1), ("sl:3", 3), ("gl:3", 3)] {
        let r = mfcheck(
            &[
                &["bicone", "--mode", "fiber", "--xi", "e"][..],
                &algebra_args(alg),
            ]
            .concat(),
        );
        let res = &r.report["result"];
        ensure(
            r.code == 0
                && res["ideal_dimension"] == dim
                && res["mf_dimension"] == dim
                && res["agrees_with_mf"] == true,
            || {
                format!(
                    "{alg}: exit {}, fiber {}, mf {}",
                    r.code, res["ideal_dimension"], res["mf_dimension"]
                )
            },
        )?;
    }
    Ok("fibers 1, 3, 3 agree with the shift families".into())
}

fn smoothness() -> Check {
    let mut out = Vec::new();
    for alg in ["sl:2", "sl:3"] {
        let r = mfcheck(
            &[
                &["bicone", "--mode", "smoothness", "--samples", "20"][..],
                &algebra_args(alg),
            ]
            .concat(),
        );
        let rows = r.report["result"]["rows"]
            .as_array()
            .map(Vec::len)
            .unwrap_or(0);
        let omega = &r.report["result"]["omega_count"];
        ensure(r.code == 0 && rows >= 20, || {
            format!("{alg}: exit {}, {rows} rows", r.code)
        })?;
        out.push(format!("{alg} {rows} pairs ({omega} in the regular locus)"));
    }
    Ok(out.join(", "))
}

fn degenerate_control() -> Check {
    timed(Duration::from_secs(5), || {
        for alg in ["sl:2", "sl:3", "gl:2", "gl:3", "so:3", "sp:4"] {
            let r = mfcheck(&[&["regseq", "--xi", "zero"][..], &algebra_args(alg)].concat());
            ensure(
                r.code == 1 && r.report["result"]["degenerate"] == true,
                || format!("{alg}: exit {}", r.code),
            )?;
        }
        Ok("six algebras flagged with verdict false".into())
    })
}

fn centralizer_pipeline() -> Check {
    timed(Duration::from_secs(900), || {
        for p in ["3", "2,1", "1,1,1"] {
            let r = mfcheck(&["star", "--type", "gl", "--size", "3", "--partition", p]);
            ensure(r.code == 0 && r.report["result"]["verdict"] == true, || {
                format!("star {p}: exit {}", r.code)
            })?;
        }
        let r = mfcheck(&[
            "conjecture",
            "--type",
            "gl",
            "--size",
            "3",
            "--all-partitions",
        ]);
        ensure(r.code == 0, || format!("conjecture: exit {}", r.code))?;
        Ok("gl3 (3), (2,1), (1,1,1)".into())
    })
}

fn centralizer_stretch() -> Check {
    let r = mfcheck(&[
        "conjecture",
        "--type",
        "gl",
        "--size",
        "4",
        "--all-partitions",
        "--jobs",
        "5",
        "--timeout-secs",
        "30",
    ]);
    let rows = r.report["result"]["rows"]
        .as_array()
        .cloned()
        .unwrap_or_default();
    let summary: Vec<String> = rows
        .iter()
        .map(|row| {
            format!(
                "{}={}",
                row["partition"],
                row["verdict"].as_str().unwrap_or("?")
            )
        })
        .collect();
    ensure(r.code == 0 || r.code == 2, || {
        format!("exit {}: {}", r.code, summary.join(" "))
    })?;
    Ok(summary.join(" "))
}

fn consistency_identity() -> Check {
    timed(Duration::from_secs(30), || {
        let mut checked = 0;
        for (kind, size) in CLASSICAL {
            let l = build_classical(kind, size).unwrap();
            let fam = invariant_generators(&l).unwrap();
            let n = l.dim();
            let t = principal_sl2(&l).unwrap();
            let ef: Vec<Rational> = t.e.iter().zip(&t.f).map(|(a, b)| a + b).collect();
            let (random, _) = l.random_regular_point(42, 64).unwrap();
            for xi in [t.e.clone(), ef, random] {
                let at_xi: Vec<Polynomial> = (0..n)
                    .map(|k| Polynomial::var(n, k))
                    .chain(xi.iter().map(|c| Polynomial::constant(n, c.clone())))
                    .collect();
                for (p, &d) in fam.generators.iter().zip(&fam.degrees) {
                    let comps = bigraded_components(p).unwrap();
                    for j in 0..=d {
                        let lhs = shift_derivative(p, &xi, j).unwrap();
                        let rhs = comps[j as usize]
                            .substitute(&at_xi)
                            .unwrap()
                            .scale(&factorial(j));
                        ensure(lhs == rhs, || format!("{kind:?} {size}: p_{} j={j}", d))?;
                        checked += 1;
                    }
                }
            }
        }
        Ok(format!("{checked} identities"))
    })
}

fn determinism() -> Check {
    let runs: [&[&str]; 4] = [
        &[
            "commute",
            "--type",
            "gl",
            "--size",
            "3",
            "--xi",
            "random-regular",
            "--seed",
            "11",
        ],
        &[
            "regseq",
            "--type",
            "sl",
            "--size",
            "3",
            "--xi",
            "random-regular",
            "--seed",
            "11",
        ],
        &["regseq", "--type", "gl", "--size", "3", "--xi", "e"],
        &[
            "conjecture",
            "--type",
            "gl",
            "--size",
            "3",
            "--all-partitions",
            "--jobs",
            "3",
            "--seed",
            "11",
        ],
    ];
    for args in runs {
        let a = mfcheck(args).report["report_digest"].clone();
        let b = mfcheck(args).report["report_digest"].clone();
        ensure(a.is_string() && a == b, || {
            format!("{}: {a} vs {b}", args[0])
        })?;
    }
    Ok("4 repeated runs with identical digests".into())
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("1 structure axioms", structure_axioms),
        ("2 index values", index_values),
        ("3 degree sums", degree_sums),
        ("4 Poisson commutativity", poisson_commutativity),
        ("5 regular sequences", regular_sequences),
        ("6 nilpotent cones", nilpotent_cones),
        ("7 bicone dimension", bicone_dimension),
        ("8 bicone fibers", bicone_fibers),
        ("9 smoothness cross-check", smoothness),
        ("10 degenerate control", degenerate_control),
        ("11 centralizer pipeline", centralizer_pipeline),
        ("11 gl4 stretch (timeout tolerated)", centralizer_stretch),
        ("12 consistency identity", consistency_identity),
        ("13 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
