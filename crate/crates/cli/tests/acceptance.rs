//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use ehrhart_cli::formats::LedgerFile;
use ehrhart_core::arith::{gcd, int, mod_inverse, rat};
use ehrhart_core::{
    coprime_weight_triples, count_a, count_simplex_eq, count_triangle_le, dedekind_sum_fast,
    dedekind_sum_naive, delta_comb, delta_table_for_local_type, ehrhart_at_multiple,
    ehrhart_quasipolynomial, fourier_dedekind_sum, ledger_check, poly_part, DedekindArgs,
    DenumerantQuasiPolynomial, FourierDedekindArgs, PartitionPolyInputs, QuotientType, Rational,
    WeightVector,
};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s(a: i64, b: i64) -> Rational {
    dedekind_sum_naive(DedekindArgs::new(a, b).unwrap())
}

fn s0(a: i64, b: i64, c: i64) -> Rational {
    fourier_dedekind_sum(&FourierDedekindArgs::new(0, vec![a, b], c).unwrap()).unwrap()
}

fn inv(a: i64, m: i64) -> i64 {
    if m == 1 {
        0
    } else {
        mod_inverse(a, m).unwrap()
    }
}

fn pairwise_coprime(a: i64, b: i64, c: i64) -> bool {
    gcd(a, b) == 1 && gcd(a, c) == 1 && gcd(b, c) == 1
}

fn oracle(w: &WeightVector, d: i64) -> Rational {
    let [a, b, c] = w.weights();
    int(count_simplex_eq(a, b, c, d).value() as i64)
}

fn example_2_3_7() -> Check {
    let w = WeightVector::new(2, 3, 7).unwrap();
    let qp = ehrhart_quasipolynomial(&w);
    let c = qp.coefficients();
    ensure(qp.evaluate(54) == int(43), || {
        format!("Eh(54) = {}", qp.evaluate(54))
    })?;
    ensure(oracle(&w, 54) == int(43), || {
        "enumeration at 54 is not 43".into()
    })?;
    ensure(c[2].values() == [rat(1, 84)], || format!("c2 = {}", c[2]))?;
    ensure(c[1].values() == [rat(1, 7)], || format!("c1 = {}", c[1]))
}

fn sweep() -> Check {
    let triples = coprime_weight_triples(210);
    ensure(triples.len() >= 25, || {
        format!("only {} triples", triples.len())
    })?;
    for w in &triples {
        let qp = ehrhart_quasipolynomial(w);
        for d in 0..=3 * w.product() {
            let (f, o) = (qp.evaluate(d), oracle(w, d));
            ensure(f == o, || {
                format!("w = {w}, d = {d}: formula {f}, enumeration {o}")
            })?;
        }
    }
    Ok(())
}

fn table_1() -> Check {
    let local = QuotientType::new(7, 2, 3).unwrap();
    let table = delta_table_for_local_type(&local).map_err(|e| e.to_string())?;
    let expected = [
        rat(0, 1),
        rat(2, 7),
        rat(3, 7),
        rat(3, 7),
        rat(2, 7),
        rat(0, 1),
        rat(4, 7),
    ];
    ensure(table.values() == expected, || format!("table {table}"))?;
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/table1_X7_2_3.json");
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let file = LedgerFile::parse(&text).map_err(|e| e.to_string())?;
    let entries = file.entries().map_err(|e| e.to_string())?;
    ensure(entries.len() == 7, || {
        "ledger has fewer than seven columns".into()
    })?;
    let report = ledger_check(&entries, &local).map_err(|e| e.to_string())?;
    ensure(report.all_passed(), || {
        format!("{} ledger failures", report.failures())
    })
}

fn auxiliary_lists() -> Check {
    for ((d, a, b), expected) in [
        ((2, 1, 1), vec![rat(0, 1), rat(1, 4)]),
        ((3, 1, 2), vec![rat(0, 1), rat(1, 3), rat(1, 3)]),
    ] {
        let table = delta_table_for_local_type(&QuotientType::new(d, a, b).unwrap())
            .map_err(|e| e.to_string())?;
        ensure(table.values() == expected, || {
            format!("X({d}; {a}, {b}): {table}")
        })?;
    }
    Ok(())
}

fn dedekind_suite() -> Check {
    for a in 1..=200 {
        for b in 1..=200 {
            if gcd(a, b) == 1 {
                let rhs = rat(-1, 4) + rat(1 + a * a + b * b, 12 * a * b);
                ensure(s(a, b) + s(b, a) == rhs, || {
                    format!("reciprocity at ({a}, {b})")
                })?;
            }
        }
    }
    for b in 1..=2000 {
        for a in 0..b {
            if gcd(a, b) == 1 {
                let args = DedekindArgs::new(a, b).unwrap();
                ensure(dedekind_sum_fast(args) == dedekind_sum_naive(args), || {
                    format!("fast != naive at ({a}, {b})")
                })?;
            }
        }
    }
    for a in 1..=50 {
        for b in 1..=50 {
            for c in 1..=50 {
                if pairwise_coprime(a, b, c) {
                    let lhs = s(b * inv(c, a), a) + s(c * inv(a, b), b) + s(a * inv(b, c), c);
                    let rhs = rat(-1, 4) + rat(a * a + b * b + c * c, 12 * a * b * c);
                    ensure(lhs == rhs, || format!("three-term at ({a}, {b}, {c})"))?;
                }
            }
        }
    }
    Ok(())
}

fn popoviciu_suite() -> Check {
    for a in 1..=30 {
        for b in 1..=30 {
            if gcd(a, b) != 1 {
                continue;
            }
            let p = DenumerantQuasiPolynomial::planar(a, b).unwrap();
            ensure(p.evaluate(0) == int(1), || format!("p_{{{a},{b},1}}(0)"))?;
            for t in 0..=5 * a * b {
                let count = int(count_triangle_le(a, b, t).value() as i64);
                ensure(p.evaluate(t) == count, || format!("p_{{{a},{b},1}}({t})"))?;
            }
        }
    }
    for a in 1..=15 {
        for b in a..=15 {
            for c in b..=15 {
                if !pairwise_coprime(a, b, c) {
                    continue;
                }
                let p = DenumerantQuasiPolynomial::new(a, b, c).unwrap();
                ensure(p.evaluate(0) == int(1), || format!("p_{{{a},{b},{c}}}(0)"))?;
                for t in 0..=3 * a * b * c {
                    let count = int(count_simplex_eq(a, b, c, t).value() as i64);
                    ensure(p.evaluate(t) == count, || format!("p_{{{a},{b},{c}}}({t})"))?;
                }
            }
        }
    }
    Ok(())
}

fn multiples() -> Check {
    for w in coprime_weight_triples(210) {
        let qp = ehrhart_quasipolynomial(&w);
        for k in 0..=5u64 {
            let d = k as i64 * w.product();
            let closed = ehrhart_at_multiple(&w, k);
            ensure(closed == qp.evaluate(d) && closed == oracle(&w, d), || {
                format!("w = {w}, k = {k}: closed form {closed}")
            })?;
        }
    }
    Ok(())
}

fn pick_properties() -> Check {
    for p in 1..=12 {
        for q in 1..=12 {
            if gcd(p, q) != 1 {
                continue;
            }
            for a in 1..=4 {
                let r = p * a;
                ensure(int(count_a(p, q, r) as i64) == delta_comb(p, q, r), || {
                    format!("(1) at p = {p}, q = {q}, r = {r}")
                })?;
                for r in 0..=3 * p {
                    let r1 = r + p * a;
                    let extra = int(a * q * r);
                    ensure(
                        delta_comb(p, q, r1) - delta_comb(p, q, r)
                            == delta_comb(p, q, r1 - r) + &extra,
                        || format!("(2) for delta at p = {p}, q = {q}, r = {r}, a = {a}"),
                    )?;
                    let diff = count_a(p, q, r1) as i64 - count_a(p, q, r) as i64;
                    ensure(
                        int(diff) == int(count_a(p, q, r1 - r) as i64) + &extra,
                        || format!("(2) for A at p = {p}, q = {q}, r = {r}, a = {a}"),
                    )?;
                    let lhs = int(count_a(p, q, r1) as i64) - delta_comb(p, q, r1);
                    let rhs = int(count_a(p, q, r) as i64) - delta_comb(p, q, r);
                    ensure(lhs == rhs, || {
                        format!("(3) at p = {p}, q = {q}, r = {r}, a = {a}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// The three-term sum of `s_0` equals `1 - poly(0)`; the closed form
/// `-1/4 + (a^2 + b^2 + c^2)/(12abc)` does not hold (see the README).
fn zero_term_reciprocity() -> Check {
    let total = s0(2, 3, 7) + s0(7, 3, 2) + s0(2, 7, 3);
    ensure(total == rat(319, 504), || format!("sum is {total}"))?;
    let poly0 = poly_part(&PartitionPolyInputs::new(2, 3, 7, 0).unwrap());
    ensure(total == int(1) - poly0, || {
        "sum differs from 1 - poly(0)".into()
    })?;
    let printed = rat(-1, 4) + rat(4 + 9 + 49, 12 * 42);
    ensure(printed == rat(-64, 504), || {
        format!("printed form evaluates to {printed}")
    })?;
    ensure(total != printed, || {
        "printed form unexpectedly holds".into()
    })
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "1 Eh_(2,3,7)(54) = 43, c2 = 1/84, c1 = 1/7",
            example_2_3_7,
            Duration::from_secs(1),
        ),
        (
            "2 formula = enumeration for all triples with w0 w1 w2 <= 210",
            sweep,
            Duration::from_secs(120),
        ),
        (
            "3 Delta table and ledger for X(7; 2, 3)",
            table_1,
            Duration::from_secs(1),
        ),
        (
            "4 Delta tables for X(2; 1, 1) and X(3; 1, 2)",
            auxiliary_lists,
            Duration::from_secs(1),
        ),
        (
            "5 Dedekind reciprocity, fast = naive, three-term",
            dedekind_suite,
            Duration::from_secs(30),
        ),
        (
            "6 Popoviciu closed forms = enumeration",
            popoviciu_suite,
            Duration::from_secs(60),
        ),
        (
            "7 Eh_w(k w0 w1 w2) closed form, k <= 5",
            multiples,
            Duration::from_secs(60),
        ),
        (
            "8 A - delta properties (1)-(3)",
            pick_properties,
            Duration::from_secs(60),
        ),
        (
            "9 zero-term three-way sum at (2, 3, 7) is 319/504",
            zero_term_reciprocity,
            Duration::from_secs(1),
        ),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= budget, || {
                format!("took {elapsed:.2?}, budget {budget:?}")
            })
        });
        match result {
            Ok(()) => println!("PASS [{elapsed:>10.2?}] {name}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL [{elapsed:>10.2?}] {name}: {reason}");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
