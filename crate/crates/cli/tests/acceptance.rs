//! Acceptance criteria, one check per criterion, run in order with one
//! PASS/FAIL line each. Every check is exact: no tolerances anywhere.

use std::collections::BTreeSet;
use std::process::Command;

use rand::Rng;

use convex_composite::composite::{index_tuples, product_generators};
use convex_composite::linalg::{kron_all, rank, solve_linear, RMat};
use convex_composite::lp::{lp_solve, verify_outcome, HRep, LpOutcome, LpProblem};
use convex_composite::sample::{
    convex_combination, random_functional, random_functional_tuple, random_rat, random_state,
    random_state_tuple, random_vector, seeded,
};
use convex_composite::separability::{separability_lp, SeparabilityVerdict};
use convex_composite::space::hull_lp;
use convex_composite::{
    classical_simplex, evaluate, gbit_square, is_separable, juxtapose, max_tensor, min_tensor,
    verify_witness, Functional, RVec, Rat, StateSpace,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn bit() -> StateSpace {
    classical_simplex(2).unwrap()
}

fn trit() -> StateSpace {
    classical_simplex(3).unwrap()
}

fn err(e: convex_composite::Error) -> String {
    e.to_string()
}

/// Brute-force vertex oracle: every choice of `dim - #equalities`
/// inequalities made tight, solved exactly, kept when the solution is unique
/// and feasible. Independent of the double-description code.
fn brute_force_vertices(h: &HRep) -> BTreeSet<RVec> {
    let free = h.dim - h.equalities.len();
    let mut out = BTreeSet::new();
    let m = h.inequalities.len();
    let mut chosen: Vec<usize> = (0..free).collect();
    loop {
        let rows: Vec<RVec> = h
            .equalities
            .iter()
            .chain(chosen.iter().map(|&i| &h.inequalities[i]))
            .map(|c| c.coeffs.clone())
            .collect();
        let rhs = RVec::new(
            h.equalities
                .iter()
                .chain(chosen.iter().map(|&i| &h.inequalities[i]))
                .map(|c| c.rhs.clone())
                .collect(),
        );
        let a = RMat::from_rows(&rows, h.dim).unwrap();
        if rank(&a) == h.dim {
            if let Some(x) = solve_linear(&a, &rhs).unwrap() {
                if h.contains(&x) {
                    out.insert(x);
                }
            }
        }
        // next lexicographic subset
        let mut i = free;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if chosen[i] < m - free + i {
                chosen[i] += 1;
                for j in i + 1..free {
                    chosen[j] = chosen[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn criterion_1_interdependence() -> Check {
    let cases: Vec<Vec<StateSpace>> = vec![
        vec![bit(), bit()],
        vec![gbit_square(), gbit_square()],
        vec![gbit_square(), bit(), bit()],
    ];
    let mut rng = seeded(1);
    let mut checked = 0;
    for parties in cases {
        let c = min_tensor(parties.clone()).map_err(err)?;
        for _ in 0..200 {
            let fs = random_functional_tuple(&mut rng, &parties);
            let states = random_state_tuple(&mut rng, &parties);
            let simple = c.simple_functional(&fs).map_err(err)?;
            let embedded = c.product_embed(&states).map_err(err)?;
            let lhs = evaluate(&simple.realized, &embedded).map_err(err)?;
            let mut rhs = Rat::one();
            for (f, rho) in fs.iter().zip(&states) {
                rhs *= evaluate(f, rho).map_err(err)?;
            }
            ensure(lhs == rhs, format!("{}: {lhs} != {rhs}", c.label()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} tuples, exact equality"))
}

fn nonzero_functional<R: Rng>(rng: &mut R, s: &StateSpace) -> Functional {
    loop {
        let f = random_functional(rng, s);
        if s.generators().iter().any(|g| !f.coords.dot(g).is_zero()) {
            return f;
        }
    }
}

fn criterion_2_vanishing() -> Check {
    let cases: Vec<Vec<StateSpace>> = vec![
        vec![gbit_square()],
        vec![bit(), gbit_square()],
        vec![gbit_square(), gbit_square()],
        vec![gbit_square(), bit(), bit()],
    ];
    let mut rng = seeded(2);
    let mut positions = 0;
    for parties in cases {
        let n = parties.len();
        let jx = juxtapose(parties.clone()).map_err(err)?;
        let min = min_tensor(parties.clone()).map_err(err)?;
        let max = max_tensor(parties.clone()).map_err(err)?;
        let min_gens = min.generators().map_err(err)?.to_vec();
        let max_gens = max.generators().map_err(err)?.to_vec();
        let zero = |s: &StateSpace| Functional::new(s.label(), RVec::zeros(s.ambient_dim()));
        for k in 0..n {
            // juxtaposition: only factor k is nonzero
            let fs: Vec<Functional> = parties
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    if j == k {
                        nonzero_functional(&mut rng, s)
                    } else {
                        zero(s)
                    }
                })
                .collect();
            let jf = jx.juxt_functional(&fs).map_err(err)?;
            let live = jx
                .generators()
                .map_err(err)?
                .iter()
                .any(|g| !jf.coords.dot(g).is_zero());
            ensure(
                live,
                format!(
                    "{}: juxtaposition with live factor {k} vanished",
                    jx.label()
                ),
            )?;

            // simple functional: only factor k is zero
            let fs: Vec<Functional> = parties
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    if j == k {
                        zero(s)
                    } else {
                        nonzero_functional(&mut rng, s)
                    }
                })
                .collect();
            let sf = min.simple_functional(&fs).map_err(err)?;
            let dead = min_gens
                .iter()
                .chain(&max_gens)
                .all(|g| sf.realized.coords.dot(g).is_zero());
            ensure(
                dead,
                format!(
                    "{}: simple functional with zero factor {k} survived",
                    min.label()
                ),
            )?;
            positions += 1;
        }
        // all factors zero: the juxtaposition tuple vanishes too
        let zeros: Vec<Functional> = parties.iter().map(zero).collect();
        let jf = jx.juxt_functional(&zeros).map_err(err)?;
        ensure(jf.is_zero(), "all-zero juxtaposition tuple is nonzero")?;
    }
    Ok(format!("{positions} factor positions over n = 1..3"))
}

fn criterion_3_w_dimension() -> Check {
    let space = |d: usize| match d {
        3 => gbit_square(),
        n => classical_simplex(n).unwrap(),
    };
    let mut seen = Vec::new();
    for dims in [
        vec![2, 2],
        vec![3, 3],
        vec![2, 3],
        vec![2, 2, 2],
        vec![3, 4],
    ] {
        let parties: Vec<StateSpace> = dims.iter().map(|&d| space(d)).collect();
        let c = min_tensor(parties).map_err(err)?;
        let got = c.simple_span_dim().map_err(err)?;
        let want: usize = dims.iter().product();
        ensure(
            got == want,
            format!("{dims:?}: dim W = {got}, expected {want}"),
        )?;
        seen.push(format!("{want}"));
    }
    Ok(format!("dim W = {}", seen.join(", ")))
}

fn criterion_4_universal() -> Check {
    let c = min_tensor(vec![gbit_square(), gbit_square()]).map_err(err)?;
    ensure(
        c.simple_span_dim().map_err(err)? == 9,
        "simple basis rank is not 9",
    )?;
    let mut rng = seeded(4);
    let targets = [1usize, 2, 5];
    for m in 0..20 {
        let k = targets[m % targets.len()];
        let values: Vec<RVec> = (0..9).map(|_| random_vector(&mut rng, k)).collect();
        let phi = |t: &[usize]| values[t[0] * 3 + t[1]].clone();
        let probes: Vec<Vec<Functional>> = (0..20)
            .map(|_| random_functional_tuple(&mut rng, c.parties()))
            .collect();
        let map = c.universal_factorization(k, phi, &probes).map_err(err)?;
        // Φ on each basis simple element reproduces phi
        for t in index_tuples(&[3, 3]) {
            let basis = c
                .simple_functional(&[
                    Functional::new("gbit", RVec::unit(3, t[0])),
                    Functional::new("gbit", RVec::unit(3, t[1])),
                ])
                .map_err(err)?;
            ensure(
                map.mul_vec(&basis.realized.coords) == phi(&t),
                format!("map {m}: basis {t:?}"),
            )?;
        }
        // probes against a hand-rolled bilinear expansion
        for (pi, p) in probes.iter().enumerate() {
            let simple = c.simple_functional(p).map_err(err)?;
            let mut expect = RVec::zeros(k);
            for i in 0..3 {
                for j in 0..3 {
                    let w = &p[0].coords[i] * &p[1].coords[j];
                    expect = expect.add_scaled(&w, &values[i * 3 + j]);
                }
            }
            ensure(
                map.mul_vec(&simple.realized.coords) == expect,
                format!("map {m}: probe {pi}"),
            )?;
        }
    }
    Ok("20 maps into dims {1,2,5}, 20 probes each, basis rank 9".into())
}

fn criterion_5_injectivity() -> Check {
    let mut rng = seeded(5);
    let mut total = 0;
    for parties in [
        vec![gbit_square(), gbit_square()],
        vec![bit(), trit(), bit()],
    ] {
        let c = min_tensor(parties.clone()).map_err(err)?;
        let mut tuples = BTreeSet::new();
        let mut images = BTreeSet::new();
        while tuples.len() < 200 {
            let states = random_state_tuple(&mut rng, &parties);
            if tuples.insert(states.clone()) {
                images.insert(c.product_embed(&states).map_err(err)?);
            }
        }
        ensure(
            images.len() == tuples.len(),
            format!("{}: embedding collision", c.label()),
        )?;
        total += tuples.len();
    }
    Ok(format!(
        "{total} distinct tuples, {total} distinct embeddings"
    ))
}

fn classical_case(parties: Vec<StateSpace>, expected: usize) -> Result<String, String> {
    let max = max_tensor(parties.clone()).map_err(err)?;
    let dd: BTreeSet<RVec> = max.generators().map_err(err)?.iter().cloned().collect();
    let oracle = brute_force_vertices(max.hrep().unwrap());
    let products: BTreeSet<RVec> = product_generators(&parties).into_iter().collect();
    ensure(
        dd == oracle,
        format!("{}: DD and brute force disagree", max.label()),
    )?;
    ensure(
        dd == products,
        format!("{}: max vertices are not the products", max.label()),
    )?;
    ensure(
        dd.len() == expected,
        format!("{}: {} vertices", max.label(), dd.len()),
    )?;
    for v in &dd {
        let verdict = is_separable(&parties, v).map_err(err)?;
        ensure(
            verdict.is_separable(),
            format!("{}: vertex {v:?} entangled", max.label()),
        )?;
        ensure(
            verdict.verify(&parties, v).map_err(err)?,
            "decomposition failed to verify",
        )?;
    }
    Ok(format!("{} {}", max.label(), dd.len()))
}

fn criterion_6_classical() -> Check {
    let a = classical_case(vec![bit(), bit()], 4)?;
    let b = classical_case(vec![bit(), trit()], 6)?;
    Ok(format!("{a}, {b} vertices; all product, all separable"))
}

fn criterion_7_gbit() -> Check {
    let parties = vec![gbit_square(), gbit_square()];
    let max = max_tensor(parties.clone()).map_err(err)?;
    let vertices: Vec<RVec> = max.generators().map_err(err)?.to_vec();
    let oracle = brute_force_vertices(max.hrep().unwrap());
    ensure(
        vertices.iter().cloned().collect::<BTreeSet<_>>() == oracle,
        "DD and brute-force vertex sets differ",
    )?;
    ensure(vertices.len() == 24, format!("{} vertices", vertices.len()))?;
    let products: BTreeSet<RVec> = product_generators(&parties).into_iter().collect();
    let (mut sep, mut ent) = (0, 0);
    for v in &vertices {
        match is_separable(&parties, v).map_err(err)? {
            SeparabilityVerdict::Separable { .. } => {
                ensure(products.contains(v), "separable vertex is not a product")?;
                sep += 1;
            }
            SeparabilityVerdict::Entangled { witness, margin } => {
                ensure(!products.contains(v), "product vertex reported entangled")?;
                ensure(margin.is_negative(), "nonnegative margin")?;
                ensure(
                    verify_witness(&parties, &witness, v).map_err(err)?,
                    "witness rejected",
                )?;
                // direct re-evaluation on the 16 product generators
                let min_val = products
                    .iter()
                    .map(|g| witness.coords.dot(g))
                    .min()
                    .unwrap();
                ensure(
                    !min_val.is_negative(),
                    "witness negative on a product state",
                )?;
                ensure(witness.coords.dot(v) == margin, "margin mismatch")?;
                ent += 1;
            }
        }
    }
    ensure(
        sep == 16 && ent == 8,
        format!("{sep} separable, {ent} entangled"),
    )?;
    Ok(format!(
        "24 vertices, {sep} separable, {ent} entangled, 8 witnesses verified"
    ))
}

fn criterion_8_convexity() -> Check {
    let mut rng = seeded(8);
    let mut count = 0;
    for parties in [
        vec![gbit_square(), gbit_square()],
        vec![gbit_square(), bit()],
    ] {
        let gens = product_generators(&parties);
        for _ in 0..50 {
            let mut pick = || {
                let mut w: Vec<i64> = (0..gens.len()).map(|_| rng.gen_range(0..=3)).collect();
                let i = rng.gen_range(0..gens.len());
                w[i] += 1;
                convex_combination(&gens, &w)
            };
            let (a, b) = (pick(), pick());
            for s in [&a, &b] {
                ensure(
                    is_separable(&parties, s).map_err(err)?.is_separable(),
                    "sample not separable",
                )?;
            }
            let mid = a.add(&b).scale(&Rat::new(1, 2));
            let verdict = is_separable(&parties, &mid).map_err(err)?;
            ensure(
                verdict.is_separable(),
                format!("midpoint {mid:?} entangled"),
            )?;
            ensure(
                verdict.verify(&parties, &mid).map_err(err)?,
                "midpoint decomposition rejected",
            )?;
            // cone generated by the separable set: positive multiples stay
            // nonnegative combinations of product vectors
            let SeparabilityVerdict::Separable { terms } = verdict else {
                unreachable!()
            };
            let lambda = Rat::new(rng.gen_range(1..=9), rng.gen_range(1..=4));
            let mut sum = RVec::zeros(mid.dim());
            for t in &terms {
                let w = &lambda * &t.weight;
                ensure(!w.is_negative(), "negative cone weight")?;
                sum = sum.add_scaled(&w, &kron_all(&t.factors));
            }
            ensure(sum == mid.scale(&lambda), "scaled decomposition mismatch")?;
            count += 1;
        }
    }
    Ok(format!("{count} midpoints separable, positive multiples in the cone"))
}

fn random_lp<R: Rng>(rng: &mut R) -> LpProblem {
    let n = rng.gen_range(1..=4);
    let mut p = LpProblem::new(n).maximize(random_vector(rng, n));
    for _ in 0..rng.gen_range(0..=2) {
        p = p.eq(random_vector(rng, n), random_rat(rng));
    }
    for _ in 0..rng.gen_range(0..=4) {
        p = p.le(random_vector(rng, n), random_rat(rng));
    }
    for j in 0..n {
        if rng.gen_bool(0.6) {
            p = p.nonneg(j);
        }
    }
    p
}

fn criterion_9_certificates() -> Check {
    let mut problems: Vec<LpProblem> = Vec::new();
    let mut rng = seeded(9);
    problems.extend((0..300).map(|_| random_lp(&mut rng)));

    let gg = vec![gbit_square(), gbit_square()];
    let max = max_tensor(gg.clone()).map_err(err)?;
    for v in max.generators().map_err(err)? {
        problems.push(separability_lp(&gg, v));
    }
    let h = max.hrep().unwrap().to_lp();
    for i in 0..9 {
        for s in [1, -1] {
            let mut obj = RVec::zeros(9);
            obj[i] = Rat::from(s);
            problems.push(h.clone().maximize(obj));
        }
    }
    let g = gbit_square();
    for _ in 0..20 {
        let p = random_vector(&mut rng, 3);
        problems.push(hull_lp(g.generators(), &p));
        problems.push(hull_lp(g.generators(), &random_state(&mut rng, &g)));
    }

    let mut counts = [0usize; 3];
    for (i, p) in problems.iter().enumerate() {
        let out = lp_solve(p);
        verify_outcome(p, &out).map_err(|e| format!("problem {i}: {e}"))?;
        ensure(lp_solve(p) == out, format!("problem {i}: nondeterministic"))?;
        counts[match out {
            LpOutcome::Optimal { .. } => 0,
            LpOutcome::Infeasible { .. } => 1,
            LpOutcome::Unbounded { .. } => 2,
        }] += 1;
    }
    ensure(
        counts.iter().all(|&c| c > 0),
        format!("status coverage {counts:?}"),
    )?;
    Ok(format!(
        "{} outcomes verified ({} optimal, {} infeasible, {} unbounded)",
        problems.len(),
        counts[0],
        counts[1],
        counts[2]
    ))
}

fn criterion_10_determinism() -> Check {
    let exe = env!("CARGO_BIN_EXE_ccomp");
    for demo in ["classical", "gbit", "universal"] {
        let run = || {
            Command::new(exe)
                .args(["demo", demo, "--seed", "0"])
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(
            a.status.success(),
            format!("demo {demo} exited with {}", a.status),
        )?;
        ensure(
            a.stdout == b.stdout,
            format!("demo {demo} transcripts differ"),
        )?;
    }
    Ok("classical, gbit, universal byte-identical".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("1 interdependence law", criterion_1_interdependence),
        ("2 vanishing dichotomy", criterion_2_vanishing),
        ("3 dimension of W", criterion_3_w_dimension),
        ("4 universal property", criterion_4_universal),
        ("5 injectivity of embedding", criterion_5_injectivity),
        ("6 classical composites separable", criterion_6_classical),
        ("7 gbit composite entangled vertices", criterion_7_gbit),
        ("8 separable set convex", criterion_8_convexity),
        ("9 certificate soundness", criterion_9_certificates),
        ("10 demo determinism", criterion_10_determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                println!("criterion {name}: FAIL ({why})");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
