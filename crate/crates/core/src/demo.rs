//! Built-in end-to-end scenarios, each producing a deterministic transcript.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::composite::{max_tensor, min_tensor, product_generators, Composite};
use crate::error::{Error, Result};
use crate::linalg::RVec;
use crate::sample::{convex_combination, random_functional_tuple, random_vector, seeded};
use crate::separability::{is_separable, verify_witness, SeparabilityVerdict};
use crate::space::{classical_simplex, gbit_square, remove_redundant_generators, StateSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DemoName {
    Classical,
    Gbit,
    Universal,
}

impl FromStr for DemoName {
    type Err = Error;

    fn from_str(s: &str) -> Result<DemoName> {
        match s {
            "classical" => Ok(DemoName::Classical),
            "gbit" => Ok(DemoName::Gbit),
            "universal" => Ok(DemoName::Universal),
            other => Err(Error::Domain(format!("unknown demo {other:?}"))),
        }
    }
}

impl fmt::Display for DemoName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DemoName::Classical => "classical",
            DemoName::Gbit => "gbit",
            DemoName::Universal => "universal",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transcript {
    lines: Vec<String>,
    failures: usize,
}

impl Transcript {
    pub fn note(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    /// Records a check; `text` may contain `{}` for the PASS/FAIL word.
    pub fn check(&mut self, ok: bool, text: &str) {
        let word = if ok { "PASS" } else { "FAIL" };
        if !ok {
            self.failures += 1;
        }
        if text.contains("{}") {
            self.lines.push(text.replacen("{}", word, 1));
        } else {
            self.lines.push(format!("{text}: {word}"));
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    pub fn render(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

pub fn run_demo(name: DemoName, seed: u64) -> Result<Transcript> {
    let mut t = Transcript::default();
    t.note(format!("demo {name} (seed {seed})"));
    match name {
        DemoName::Classical => classical(&mut t, seed)?,
        DemoName::Gbit => gbit(&mut t, seed)?,
        DemoName::Universal => universal(&mut t, seed)?,
    }
    t.note(if t.passed() {
        "result: PASS"
    } else {
        "result: FAIL"
    });
    Ok(t)
}

fn verified(parties: &[StateSpace], state: &RVec) -> Result<(SeparabilityVerdict, bool)> {
    let verdict = is_separable(parties, state)?;
    let ok = match &verdict {
        SeparabilityVerdict::Separable { .. } => verdict.verify(parties, state)?,
        SeparabilityVerdict::Entangled { witness, .. } => verify_witness(parties, witness, state)?,
    };
    Ok((verdict, ok))
}

fn classical(t: &mut Transcript, seed: u64) -> Result<()> {
    let mut rng = seeded(seed);
    for dims in [[2, 2], [2, 3]] {
        let parties: Vec<StateSpace> = dims
            .iter()
            .map(|&n| classical_simplex(n))
            .collect::<Result<_>>()?;
        let max = max_tensor(parties.clone())?;
        let label = max.label();
        let vertices = max.generators()?.to_vec();
        let products: BTreeSet<RVec> = product_generators(&parties).into_iter().collect();
        let same = vertices.iter().cloned().collect::<BTreeSet<_>>() == products;
        let mut all_separable = true;
        for v in &vertices {
            let (verdict, ok) = verified(&parties, v)?;
            all_separable &= ok && verdict.is_separable();
        }
        t.check(
            same && all_separable,
            &format!(
                "{label}: min=max: {{}} ({} vertices, all separable)",
                vertices.len()
            ),
        );

        let probes = 10;
        let mut ok = true;
        for _ in 0..probes {
            let weights: Vec<i64> = (0..vertices.len()).map(|_| rng.gen_range(0..=4)).collect();
            if weights.iter().all(|&w| w == 0) {
                continue;
            }
            let p = convex_combination(&vertices, &weights);
            let (verdict, verified_ok) = verified(&parties, &p)?;
            ok &= verified_ok && verdict.is_separable();
        }
        t.check(
            ok,
            &format!("{label}: {probes} random max-composite points separable"),
        );
    }
    Ok(())
}

fn gbit(t: &mut Transcript, seed: u64) -> Result<()> {
    let parties = vec![gbit_square(), gbit_square()];
    let max = max_tensor(parties.clone())?;
    let label = max.label();
    let vertices = max.generators()?.to_vec();
    let mut separable = Vec::new();
    let mut entangled = 0;
    let mut witnesses_ok = 0;
    for v in &vertices {
        let (verdict, ok) = verified(&parties, v)?;
        match verdict {
            SeparabilityVerdict::Separable { .. } => separable.push(v.clone()),
            SeparabilityVerdict::Entangled { .. } => {
                entangled += 1;
                witnesses_ok += usize::from(ok);
            }
        }
    }
    t.check(
        vertices.len() == 24 && separable.len() == 16 && entangled == 8,
        &format!(
            "{label}: {} max vertices, {} separable, {entangled} entangled: {{}}",
            vertices.len(),
            separable.len()
        ),
    );
    t.check(
        witnesses_ok == entangled,
        &format!("{label}: {witnesses_ok}/{entangled} witnesses verified"),
    );

    let min = min_tensor(parties.clone())?;
    let extreme = remove_redundant_generators(min.vrep()?)?.generators().len();
    t.check(
        extreme == 16,
        &format!("{label}: min composite has {extreme} extreme points of 16"),
    );
    let products: BTreeSet<RVec> = min.generators()?.iter().cloned().collect();
    t.check(
        separable.iter().all(|v| products.contains(v)),
        &format!("{label}: separable vertices are exactly product vertices"),
    );

    let mut rng = seeded(seed);
    let gens = min.generators()?.to_vec();
    let pairs = 20;
    let mut ok = true;
    for _ in 0..pairs {
        let mut weights = || -> Vec<i64> {
            let mut w: Vec<i64> = (0..gens.len()).map(|_| rng.gen_range(0..=3)).collect();
            w[0] += 1;
            w
        };
        let a = convex_combination(&gens, &weights());
        let b = convex_combination(&gens, &weights());
        let mid = a.add(&b).scale(&crate::Rat::new(1, 2));
        let (verdict, verified_ok) = verified(&parties, &mid)?;
        ok &= verified_ok && verdict.is_separable();
    }
    t.check(
        ok,
        &format!("{label}: {pairs} random separable midpoints separable"),
    );
    Ok(())
}

/// Draws a random multilinear map into `target_dim` dimensions (its values on
/// dual-basis tuples) and `probes` random functional tuples, and checks the
/// factorization through `W`. `Ok(false)` means a probe disagreed.
pub fn check_universal<R: Rng>(
    c: &Composite,
    target_dim: usize,
    probes: usize,
    rng: &mut R,
) -> Result<bool> {
    let values: Vec<RVec> = (0..c.ambient_dim())
        .map(|_| random_vector(rng, target_dim))
        .collect();
    let dims: Vec<usize> = c.parties().iter().map(StateSpace::ambient_dim).collect();
    let flat = |t: &[usize]| t.iter().zip(&dims).fold(0, |acc, (&i, &d)| acc * d + i);
    let probe_tuples: Vec<_> = (0..probes)
        .map(|_| random_functional_tuple(rng, c.parties()))
        .collect();
    match c.universal_factorization(target_dim, |t| values[flat(t)].clone(), &probe_tuples) {
        Ok(_) => Ok(true),
        Err(Error::FactorizationMismatch { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

fn universal(t: &mut Transcript, seed: u64) -> Result<()> {
    let mut rng = seeded(seed);
    let c = min_tensor(vec![gbit_square(), gbit_square()])?;
    let dim_w = c.simple_span_dim()?;
    let probes = 20;
    let ok = check_universal(&c, 2, probes, &mut rng)?;
    let word = |b: bool| if b { "PASS" } else { "FAIL" };
    t.note(format!(
        "{}: dim W = {dim_w} = 3·3: {}; factorization on {probes} random probes: {}",
        c.label(),
        word(dim_w == 9),
        word(ok)
    ));
    if dim_w != 9 {
        t.failures += 1;
    }
    if !ok {
        t.failures += 1;
    }
    for k in [1, 2, 5] {
        let ok = check_universal(&c, k, probes, &mut rng)?;
        t.check(
            ok,
            &format!("target dim {k}: unique factorization agrees on {probes} probes"),
        );
    }
    Ok(())
}
