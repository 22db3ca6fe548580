//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bbcage::bounds::{excess_of, improved_bound, moore_even};
use bbcage::delete::{construct_named, NamedFamily};
use bbcage::designs::{far_partners, steiner_truncate, sts_generate};
use bbcage::polygons::{gq_q4, gq_q5, hexagon_split_cayley, polygon_certify, projective_plane};
use bbcage::prune::{gamma_f_graph, induced_branch_graph, t2_slab_graph, MooreTreeAnchor};
use bbcage::table::table1;
use bbcage::{BipartiteGraph, Error, Field};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn gf(q: u32) -> Field {
    Field::of_order(q).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn ac1() -> Check {
    let g = construct_named(NamedFamily::Q4HyperbolicPrune, &gf(3)).map_err(err)?;
    let deg4 = (0..g.order() as u32).filter(|&v| g.degree(v) == 4).count();
    let deg3 = (0..g.order() as u32).filter(|&v| g.degree(v) == 3).count();
    ensure(g.order() == 56 && deg4 == 24 && deg3 == 32, || format!("order {} with {deg4}x4, {deg3}x3", g.order()))?;
    ensure(g.girth() == Some(8), || format!("girth {:?}", g.girth()))?;
    let report = excess_of(&g).map_err(err)?;
    let diameter = report.diameter.ok_or("diameter not measured")?;
    ensure(report.improved_lower_bound == 56 && report.cage_certified, || format!("{report:?}"))?;
    Ok(format!("56 vertices, girth 8, diameter {diameter}, certified"))
}

fn hand_moore(m: u128, n: u128, g: u32) -> u128 {
    // (m+n) times 1 + x + ... + x^{r/2-1}
    let x = (m - 1) * (n - 1);
    (m + n) * (0..g / 4).map(|i| x.pow(i)).sum::<u128>()
}

fn ac2() -> Check {
    for (m, n, g, want) in [(3, 4, 8, 49), (2, 3, 8, 15), (3, 10, 8, 247), (3, 4, 12, 301)] {
        let got = moore_even(m, n, g).map_err(err)?;
        ensure(got == want && got == hand_moore(m as u128, n as u128, g), || {
            format!("moore_even({m},{n},{g}) = {got}, expected {want}")
        })?;
    }
    for (m, n, g, want) in [(3, 4, 8, 56), (3, 10, 8, 260), (3, 4, 12, 308)] {
        let got = improved_bound(m, n, g).map_err(err)?.improved_lower_bound;
        ensure(got == want, || format!("improved_bound({m},{n},{g}) = {got}, expected {want}"))?;
    }
    Ok("7 values exact".into())
}

fn ac3() -> Check {
    for (q, order) in [(2u32, 42), (3, 312)] {
        let g = construct_named(NamedFamily::Q5ParabolicPrune, &gf(q)).map_err(err)?;
        let degrees = g.biregular_degrees().map(|(a, b)| (a.min(b), a.max(b)));
        ensure(g.order() == order, || format!("q={q}: order {}", g.order()))?;
        ensure(degrees == Some((q, q * q + 1)), || format!("q={q}: degrees {degrees:?}"))?;
        ensure(g.girth() == Some(8), || format!("q={q}: girth {:?}", g.girth()))?;
        if q == 3 {
            let excess = excess_of(&g).map_err(err)?.excess_over_improved;
            ensure(excess == Some(52), || format!("q=3: excess over improved bound {excess:?}"))?;
        }
    }
    Ok("orders 42, 312; excess 52".into())
}

fn ac4() -> Check {
    let h = hexagon_split_cayley(&gf(2)).map_err(err)?;
    let cert = polygon_certify(&h, 6).map_err(err)?;
    let levi = BipartiteGraph::levi(&h).map_err(err)?;
    ensure(cert.certified && levi.n_a() == 63 && levi.n_b() == 63, || format!("{cert:?}"))?;
    ensure(levi.girth() == Some(12) && levi.diameter().ok() == Some(6), || "hexagon girth/diameter".into())?;
    let mut problems = Vec::new();
    for q in [2u32, 3] {
        let g = construct_named(NamedFamily::HexagonHyperbolicPrune, &gf(q)).map_err(err)?;
        let qq = q as usize;
        let order = (2 * qq + 1) * (qq.pow(4) - qq);
        let degrees = g.biregular_degrees().map(|(a, b)| (a.min(b), a.max(b)));
        if g.order() != order || degrees != Some((q, q + 1)) {
            problems.push(format!("q={q}: order {} degrees {degrees:?}", g.order()));
        }
        if g.girth() != Some(12) {
            problems.push(format!("q={q}: girth {:?}, expected exactly 12", g.girth()));
        }
    }
    ensure(problems.is_empty(), || problems.join("; "))?;
    Ok("hexagon certified; prunes 70 and 546 with girth 12".into())
}

fn ac5() -> Check {
    for (v, order, n) in [(13u32, 32usize, 5u32), (19, 66, 8)] {
        let g = steiner_truncate(&sts_generate(v).map_err(err)?, 0).map_err(err)?;
        let report = excess_of(&g).map_err(err)?;
        ensure(g.order() == order && (report.m, report.n, report.girth) == (3, n, 6), || {
            format!("STS({v}): order {} params ({},{};{})", g.order(), report.m, report.n, report.girth)
        })?;
        ensure(report.cage_certified, || format!("STS({v}): not certified"))?;
        far_partners(&g).map_err(err)?;
    }
    Ok("32 and 66 vertices, certified, unique far points".into())
}

fn ac6() -> Check {
    let g = construct_named(NamedFamily::Q4HyperbolicPrune, &gf(2)).map_err(err)?;
    let report = excess_of(&g).map_err(err)?;
    let moore = moore_even(2, 3, 8).map_err(err)?;
    ensure(g.order() == 15 && moore == 15 && report.excess == Some(0), || format!("{report:?}"))?;
    Ok("order 15 = moore_even(2,3,8)".into())
}

fn ac7() -> Check {
    let rows = table1(&[2, 3, 4], true).map_err(err)?;
    let mut mismatches = Vec::new();
    let mut excess_flags = 0;
    for r in &rows {
        if r.f_over != r.f_over_published {
            mismatches.push(format!("row {} q={}: |F| column {} vs {}", r.row, r.q, r.f_over, r.f_over_published));
        }
        if r.moore_over != r.moore_over_published {
            mismatches.push(format!(
                "row {} q={}: Moore column {} vs published {}",
                r.row, r.q, r.moore_over, r.moore_over_published
            ));
        }
        if r.measured_matches() == Some(false) {
            mismatches.push(format!("row {} q={}: measured order {:?}", r.row, r.q, r.measured_order));
        }
        excess_flags += r.flags.iter().filter(|f| f.starts_with("excess")).count();
    }
    let measured = rows.iter().filter(|r| r.measured_order.is_some()).count();
    ensure(measured == 3, || format!("{measured} measured rows, expected 3"))?;
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok(format!("21 rows match, 3 measured; {excess_flags} excess cells flagged"))
}

fn ac8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let f = gf(q);
        for _ in 0..1000 {
            let [a, b, c] = [0; 3].map(|_| f.element(rng.gen_range(0..q)).unwrap());
            let add = |x, y| f.add(x, y).unwrap();
            let mul = |x, y| f.mul(x, y).unwrap();
            let ok = add(add(a, b), c) == add(a, add(b, c))
                && mul(mul(a, b), c) == mul(a, mul(b, c))
                && mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
                && add(a, b) == add(b, a)
                && mul(a, b) == mul(b, a)
                && (a.is_zero() || mul(a, f.inv(a).unwrap()) == f.one());
            ensure(ok, || format!("field axioms fail in GF({q}) at ({a},{b},{c})"))?;
        }
    }
    let mut graphs = vec![
        BipartiteGraph::levi(&projective_plane(&gf(2)).map_err(err)?).map_err(err)?,
        BipartiteGraph::levi(&gq_q4(&gf(2)).map_err(err)?).map_err(err)?,
        steiner_truncate(&sts_generate(13).map_err(err)?, 0).map_err(err)?,
    ];
    let q4 = graphs[1].clone();
    graphs.push(gamma_f_graph(&q4, &MooreTreeAnchor::lex_first(&q4).map_err(err)?).map_err(err)?);
    let mut outputs = 0;
    for family in NamedFamily::ALL {
        for q in [2u32, 3, 4] {
            if family == NamedFamily::HexagonHyperbolicPrune && q > 3 {
                continue;
            }
            let field = gf(q);
            let host = match family {
                NamedFamily::Q4HyperbolicPrune | NamedFamily::Q4OvoidDelete => gq_q4(&field),
                NamedFamily::Q5ParabolicPrune | NamedFamily::Q5SubgqDelete => gq_q5(&field),
                NamedFamily::HexagonHyperbolicPrune => hexagon_split_cayley(&field),
            }
            .map_err(err)?;
            let host_girth = BipartiteGraph::levi(&host).map_err(err)?.girth();
            let g = construct_named(family, &field).map_err(err)?;
            ensure(g.girth() >= host_girth, || format!("{family} q={q}: girth decreased"))?;
            let (da, db) = g.biregular_degrees().ok_or_else(|| format!("{family} q={q}: not biregular"))?;
            ensure(da as usize * g.n_a() == db as usize * g.n_b(), || format!("{family} q={q}: edge count"))?;
            outputs += 1;
            if g.order() <= 64 {
                graphs.push(g);
            }
        }
    }
    for g in &graphs {
        ensure(g.girth() == common::brute_force_girth(g), || format!("{}: BFS girth disagrees", g.origin))?;
    }
    Ok(format!("10 fields x 1000 triples; {} graphs cross-checked; {outputs} deletion outputs", graphs.len()))
}

fn ac9() -> Check {
    let host = BipartiteGraph::levi(&gq_q4(&gf(3)).map_err(err)?).map_err(err)?;
    let anchor = MooreTreeAnchor::lex_first(&host).map_err(err)?;
    let mut accepted = Vec::new();
    for m1 in 2..=4 {
        for n1 in 2..=4 {
            match induced_branch_graph(&host, &anchor, m1, n1) {
                Ok(g) => {
                    ensure(g.order() as u32 == (m1 + n1) * 9 && g.bb_check(m1, n1, 8).passed, || {
                        format!("({m1},{n1}): order {}", g.order())
                    })?;
                    accepted.push(format!("({m1},{n1})"));
                }
                Err(Error::Domain(_)) => {}
                Err(e) => return Err(format!("({m1},{n1}): {e}")),
            }
        }
    }
    ensure(!accepted.is_empty(), || "no branch graph within the hypothesis".into())?;
    let slab = t2_slab_graph(&gf(5), 3, 4, None).map_err(err)?;
    ensure(slab.order() == 175 && slab.girth() == Some(8) && slab.bb_check(3, 4, 8).passed, || {
        format!("slab: order {} girth {:?}", slab.order(), slab.girth())
    })?;
    Ok(format!("branch graphs {} pass; slab 175 vertices girth 8", accepted.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1", ac1, Duration::from_secs(1)),
        ("AC2", ac2, Duration::from_secs(1)),
        ("AC3", ac3, Duration::from_secs(10)),
        ("AC4", ac4, Duration::from_secs(120)),
        ("AC5", ac5, Duration::from_secs(1)),
        ("AC6", ac6, Duration::from_secs(1)),
        ("AC7", ac7, Duration::from_secs(120)),
        ("AC8", ac8, Duration::from_secs(120)),
        ("AC9", ac9, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > limit {
            outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
        }
        match outcome {
            Ok(msg) => println!("{name} PASS ({elapsed:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("{name} FAIL ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
