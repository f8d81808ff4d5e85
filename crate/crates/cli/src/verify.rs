use std::fmt::Display;

use anyhow::{bail, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use semiflow::flows::{FlowCatalog, FlowFunction, Weighting};
use semiflow::relations::{evaluate_sides, instantiate, verify_stable, Convention, Instantiation, QuadraticRelation};
use semiflow::semiring::{
    CountingNat, ExactInt, PolyNat, PositiveRational, Sample, Semiring, Starred, TropicalInt, TropicalRational,
};

use crate::commands::subset_json;
use crate::{input, Mode, Report};

/// The first placement where both sides differ.
struct Failure {
    label: String,
    inst: Instantiation,
    summands: String,
    lhs: String,
    rhs: String,
}

fn first_failure<S>(f: &FlowFunction<'_, S>, rel: &QuadraticRelation, insts: &[Instantiation]) -> Result<Option<Failure>>
where
    S: Semiring + Display,
{
    for inst in insts {
        let (l, r) = evaluate_sides(f, rel, inst, Convention::Star)?;
        if l != r {
            return Ok(Some(Failure {
                label: String::new(),
                inst: *inst,
                summands: instantiate(rel, inst)?.to_string(),
                lhs: show(&l),
                rhs: show(&r),
            }));
        }
    }
    Ok(None)
}

fn show<S: Display>(v: &Starred<S>) -> String {
    match &v.0 {
        Some(x) => x.to_string(),
        None => "∗".into(),
    }
}

fn random_trial<S>(
    catalog: &FlowCatalog,
    rel: &QuadraticRelation,
    insts: &[Instantiation],
    seed: u64,
    stream: u64,
) -> Result<Option<Failure>>
where
    S: Sample + Display,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let f = FlowFunction::new(catalog, Weighting::<S>::random(catalog.network(), &mut rng))?;
    first_failure(&f, rel, insts)
}

type Trial = fn(&FlowCatalog, &QuadraticRelation, &[Instantiation], u64, u64) -> Result<Option<Failure>>;

fn carriers(mode: Mode) -> Vec<(&'static str, Trial)> {
    match mode {
        Mode::Symbolic => Vec::new(),
        Mode::Numeric => vec![
            ("counting-nat", random_trial::<CountingNat>),
            ("exact-int", random_trial::<ExactInt>),
            ("positive-rational", random_trial::<PositiveRational>),
        ],
        Mode::Tropical => vec![
            ("tropical-int", random_trial::<TropicalInt>),
            ("tropical-rational", random_trial::<TropicalRational>),
        ],
    }
}

pub fn run(relation: &str, mode: Mode, network: Option<&str>, trials: usize, seed: u64, jobs: usize) -> Result<Report> {
    let rel = input::relation(relation)?;
    let network_spec = network.map_or_else(|| format!("halfgrid:{}", rel.p + rel.q), str::to_string);
    let net = input::network(&network_spec)?;
    let n = net.sources().len();
    if n < rel.p + rel.q {
        bail!("the network has {n} sources but the relation needs p + q = {}", rel.p + rel.q);
    }
    let catalog = FlowCatalog::new(net);
    let insts = Instantiation::all(n, rel.p, rel.q);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;

    let (checked, failure) = match mode {
        Mode::Symbolic => {
            let f = FlowFunction::new(&catalog, Weighting::<PolyNat>::symbolic(catalog.network()))?;
            let chunks: Vec<&[Instantiation]> = insts.chunks(8).collect();
            let found = pool.install(|| {
                chunks
                    .par_iter()
                    .map(|chunk| first_failure(&f, &rel, chunk))
                    .collect::<Result<Vec<_>>>()
            })?;
            let failure = found.into_iter().flatten().next().map(|mut fail| {
                fail.label = "symbolic".into();
                fail
            });
            (insts.len(), failure)
        }
        Mode::Numeric | Mode::Tropical => {
            let tasks: Vec<(usize, &'static str, Trial)> = (0..trials)
                .flat_map(|t| carriers(mode).into_iter().map(move |(name, run)| (t, name, run)))
                .collect();
            let found = pool.install(|| {
                tasks
                    .par_iter()
                    .enumerate()
                    .map(|(k, (t, name, run))| {
                        Ok(run(&catalog, &rel, &insts, seed, k as u64)?.map(|mut fail| {
                            fail.label = format!("{name}, trial {}", t + 1);
                            fail
                        }))
                    })
                    .collect::<Result<Vec<_>>>()
            })?;
            (tasks.len() * insts.len(), found.into_iter().flatten().next())
        }
    };

    let balanced = verify_stable(&rel);
    let mode_name = match mode {
        Mode::Symbolic => "symbolic",
        Mode::Numeric => "numeric",
        Mode::Tropical => "tropical",
    };
    let mut text = format!(
        "relation: {rel} (p = {}, q = {})\nbalanced: {}\nnetwork: {network_spec}, {n} sources\n{mode_name}: {checked} checks\n",
        rel.p,
        rel.q,
        if balanced { "yes" } else { "no" }
    );
    let failure_json = match &failure {
        None => {
            text.push_str("pass\n");
            Value::Null
        }
        Some(fail) => {
            text.push_str(&format!(
                "fail ({}) at X = {}, Y = {}: {}\n  left  = {}\n  right = {}\n",
                fail.label, fail.inst.x, fail.inst.y, fail.summands, fail.lhs, fail.rhs
            ));
            json!({
                "label": fail.label,
                "x": subset_json(fail.inst.x),
                "y": subset_json(fail.inst.y),
                "summands": fail.summands,
                "left": fail.lhs,
                "right": fail.rhs,
            })
        }
    };
    Ok(Report {
        text,
        json: json!({
            "relation": rel.to_string(),
            "balanced": balanced,
            "network": network_spec,
            "mode": mode_name,
            "checks": checked,
            "failure": failure_json,
        }),
        ok: failure.is_none(),
    })
}
