use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use semiflow::counterexample::{evaluate_inequality, gadget_summands, CounterexampleError};
use semiflow::doubleflow::audit;
use semiflow::flows::{enumerate_flag_flows, enumerate_flows, lindstrom_matrix, FlowCatalog, Flow, Weighting};
use semiflow::laurent::laurent_expand;
use semiflow::matchings::{enumerate_feasible_matchings, is_balanced, write_collection_pair, Collection, NestedMatching};
use semiflow::network::PlanarNetwork;
use semiflow::relations::families::FamilySpec;
use semiflow::relations::{Instantiation, Summand};
use semiflow::semiring::ExactInt;
use semiflow::Subset;

use crate::input;
use crate::Report;

pub fn matching_json(m: &NestedMatching) -> Value {
    json!(m.arcs().iter().map(|a| [a.i, a.j]).collect::<Vec<_>>())
}

pub fn subset_json(a: Subset) -> Value {
    json!(a.to_vec())
}

fn collection_json(c: &Collection) -> Value {
    json!(c.members().into_iter().map(|a| a.to_vec()).collect::<Vec<_>>())
}

fn write_or_keep(path: Option<&Path>, contents: &str) -> Result<()> {
    if let Some(path) = path {
        fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

pub fn check_balance(pair: &Path) -> Result<Report> {
    let (c1, c2) = input::collection_pair(pair)?;
    let balance = is_balanced(&c1, &c2)?;
    let mut text = String::new();
    let witness = match &balance.witness {
        None => {
            text.push_str("balanced\n");
            Value::Null
        }
        Some(w) => {
            writeln!(text, "unbalanced witness: {}", w.matching.arcs_text())?;
            writeln!(text, "multiplicity: {} on the left, {} on the right", w.left, w.right)?;
            json!({ "matching": matching_json(&w.matching), "left": w.left, "right": w.right })
        }
    };
    Ok(Report {
        text,
        json: json!({
            "p": c1.p,
            "q": c1.q,
            "lhs": collection_json(&c1),
            "rhs": collection_json(&c2),
            "balanced": balance.balanced,
            "witness": witness,
        }),
        ok: balance.balanced,
    })
}

pub fn enumerate_matchings(p: usize, q: usize, set: &str) -> Result<Report> {
    let a = input::subset(set)?;
    if q == 0 || p < q {
        bail!("need p ≥ q ≥ 1, got p = {p}, q = {q}");
    }
    if a.len() != p || a.max().is_some_and(|x| x > p + q) {
        bail!("{a} is not a {p}-subset of [{}]", p + q);
    }
    let ms = enumerate_feasible_matchings(a, p, q);
    let mut text = String::new();
    for m in &ms {
        writeln!(text, "{}", m.arcs_text())?;
    }
    if ms.is_empty() {
        writeln!(text, "no feasible matchings")?;
    }
    Ok(Report {
        text,
        json: json!({
            "p": p,
            "q": q,
            "set": subset_json(a),
            "matchings": ms.iter().map(matching_json).collect::<Vec<_>>(),
        }),
        ok: true,
    })
}

fn side_text(side: &[Summand]) -> String {
    if side.is_empty() {
        return "∅".into();
    }
    side.iter().map(Summand::to_string).collect::<Vec<_>>().join(" ⊕ ")
}

pub fn counterexample(pair: &Path, output: Option<&Path>) -> Result<Report> {
    let (c1, c2) = input::collection_pair(pair)?;
    let report = match evaluate_inequality(&c1, &c2) {
        Ok(r) => r,
        Err(CounterexampleError::Balanced) => {
            return Ok(Report {
                text: "balanced: no counterexample exists\n".into(),
                json: json!({ "balanced": true }),
                ok: false,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let net = &report.gadget.network;
    let network_text = net.to_text();
    write_or_keep(output, &network_text)?;
    let summands = gadget_summands(&c1, &c2, &report.augmented);
    let mut text = String::new();
    let w = &report.witness;
    writeln!(text, "witness: {} (left {}, right {})", w.matching.arcs_text(), w.left, w.right)?;
    writeln!(text, "augmented matching: {}", report.augmented.augmented.arcs_text())?;
    writeln!(
        text,
        "gadget: {} vertices, {} edges, {} sources",
        net.num_vertices(),
        net.num_edges(),
        net.sources().len()
    )?;
    writeln!(text, "(P1)/(P2): {}", if report.p1_p2 { "verified" } else { "VIOLATED" })?;
    writeln!(text, "left:  {} = {}", side_text(&summands.lhs), report.left)?;
    writeln!(text, "right: {} = {}", side_text(&summands.rhs), report.right)?;
    match output {
        Some(path) => writeln!(text, "gadget network written to {}", path.display())?,
        None => {
            text.push_str("# gadget network\n");
            text.push_str(&network_text);
        }
    }
    Ok(Report {
        text,
        json: json!({
            "balanced": false,
            "witness": { "matching": matching_json(&w.matching), "left": w.left, "right": w.right },
            "augmented": matching_json(&report.augmented.augmented),
            "p1_p2": report.p1_p2,
            "left": report.left.to_string(),
            "right": report.right.to_string(),
            "network": network_text,
        }),
        ok: report.p1_p2,
    })
}

pub fn gen_family(spec: Option<&str>, list: bool, max_total: usize, output: Option<&Path>) -> Result<Report> {
    if list {
        let specs: Vec<FamilySpec> = [FamilySpec::Triple, FamilySpec::Quadruple, FamilySpec::Quintuple]
            .into_iter()
            .chain(FamilySpec::all_parametrized(max_total))
            .collect();
        let mut text = String::new();
        let mut items = Vec::new();
        for s in &specs {
            let rel = s.build()?;
            writeln!(text, "{s}\t{rel}")?;
            items.push(json!({ "spec": s.to_string(), "relation": rel.to_string() }));
        }
        return Ok(Report {
            text,
            json: json!({ "families": items }),
            ok: true,
        });
    }
    let Some(spec) = spec else {
        bail!("give a family spec or --list");
    };
    let family: FamilySpec = spec.parse()?;
    let rel = family.build()?;
    let file = format!("# {family}: {rel}\n{}", write_collection_pair(&rel.lhs, &rel.rhs));
    write_or_keep(output, &file)?;
    let text = match output {
        Some(path) => format!("{rel}\nwritten to {}\n", path.display()),
        None => file.clone(),
    };
    Ok(Report {
        text,
        json: json!({
            "spec": family.to_string(),
            "relation": rel.to_string(),
            "p": rel.p,
            "q": rel.q,
            "lhs": collection_json(&rel.lhs),
            "rhs": collection_json(&rel.rhs),
        }),
        ok: true,
    })
}

pub fn laurent(n: usize, set: &str) -> Result<Report> {
    let a = input::subset(set)?;
    let expr = laurent_expand(n, a)?;
    let terms: Vec<Value> = expr
        .terms()
        .map(|(m, c)| {
            let degrees: Vec<Value> = m
                .degrees()
                .map(|((q, r), d)| json!({ "interval": [q, r], "degree": d }))
                .collect();
            json!({ "coefficient": c, "monomial": m.to_string(), "degrees": degrees })
        })
        .collect();
    Ok(Report {
        text: format!("f({}) = {expr}\n", a.compact()),
        json: json!({ "n": n, "set": subset_json(a), "expression": expr.to_string(), "terms": terms }),
        ok: true,
    })
}

fn parse_weights(net: &PlanarNetwork, text: &str) -> Result<Weighting<ExactInt>> {
    let values = text
        .split(',')
        .map(|t| t.trim().parse::<BigInt>().with_context(|| format!("bad weight {t:?}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Weighting::new(net, values)?)
}

pub fn lindstrom(network: &str, weights: Option<&str>, seed: Option<u64>) -> Result<Report> {
    let net = input::network(network)?;
    let w = match (weights, seed) {
        (Some(text), _) => parse_weights(&net, text)?,
        (None, Some(seed)) => Weighting::random(&net, &mut ChaCha8Rng::seed_from_u64(seed)),
        (None, None) => Weighting::constant(&net, BigInt::from(1)),
    };
    let m = lindstrom_matrix(&net, &w)?;
    let rows: Vec<Vec<String>> = (0..m.num_rows())
        .map(|r| (0..m.num_cols()).map(|c| m.get(r, c).to_string()).collect())
        .collect();
    let text: String = rows.iter().map(|r| r.join(" ") + "\n").collect();
    Ok(Report {
        text,
        json: json!({
            "weights": w.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "rows": rows,
        }),
        ok: true,
    })
}

fn flow_json(net: &PlanarNetwork, f: &Flow) -> Value {
    let paths: Vec<Vec<&str>> = f
        .paths
        .iter()
        .map(|p| p.vertices.iter().map(|&v| net.name(v)).collect())
        .collect();
    json!(paths)
}

pub fn flows(network: &str, sources: &str, sinks: Option<&str>) -> Result<Report> {
    let net = input::network(network)?;
    let i = input::subset(sources)?;
    let flows = match sinks {
        Some(j) => enumerate_flows(&net, i, input::subset(j)?)?,
        None => enumerate_flag_flows(&net, i)?,
    };
    let mut text = String::new();
    for f in &flows {
        writeln!(text, "{}", f.render(&net))?;
    }
    if flows.is_empty() {
        text.push_str("no flows\n");
    }
    Ok(Report {
        text,
        json: json!({
            "sources": subset_json(i),
            "count": flows.len(),
            "flows": flows.iter().map(|f| flow_json(&net, f)).collect::<Vec<_>>(),
        }),
        ok: true,
    })
}

pub fn doubleflow_audit(network: &str, p: usize, q: usize, x: &str, y: Option<&str>, set: &str) -> Result<Report> {
    let net = input::split_network(input::network(network)?)?;
    let n = net.sources().len();
    let x = input::subset(x)?;
    let y = match y {
        Some(y) => input::subset(y)?,
        None => x.complement(n).iter().take(p + q).collect(),
    };
    let inst = Instantiation::new(n, p, q, x, y)?;
    let a = input::subset(set)?;
    if q == 0 || p < q || a.len() != p || a.max().is_some_and(|e| e > p + q) {
        bail!("need p ≥ q ≥ 1 and a {p}-subset of [{}], got {a}", p + q);
    }
    let catalog = FlowCatalog::new(net);
    let report = audit(&catalog, inst, a)?;
    let mut text = format!(
        "I(A) = {}, J(A) = {}: {} double flows\n",
        inst.i_of(a),
        inst.j_of(a),
        report.entries.len()
    );
    let mut items = Vec::new();
    for (k, e) in report.entries.iter().enumerate() {
        writeln!(
            text,
            "ξ{}: d = {}, M = {}, N = {} (2^d = {}), exchange {}",
            k + 1,
            e.d,
            e.matching.arcs_text(),
            e.count,
            1usize << e.d,
            if e.exchange_ok { "invariant" } else { "NOT invariant" }
        )?;
        items.push(json!({
            "d": e.d,
            "matching": matching_json(&e.matching),
            "count": e.count,
            "exchange_ok": e.exchange_ok,
        }));
    }
    Ok(Report {
        text,
        json: json!({
            "i": subset_json(inst.i_of(a)),
            "j": subset_json(inst.j_of(a)),
            "double_flows": items,
        }),
        ok: report.ok(),
    })
}
