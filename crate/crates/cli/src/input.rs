use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};

use semiflow::matchings::{parse_collection_pair, Collection};
use semiflow::network::{build_half_grid, PlanarNetwork};
use semiflow::relations::families::FamilySpec;
use semiflow::relations::QuadraticRelation;
use semiflow::Subset;

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// `halfgrid:N` or a network file.
pub fn network(spec: &str) -> Result<Arc<PlanarNetwork>> {
    if let Some(n) = spec.strip_prefix("halfgrid:") {
        let n: usize = n.parse().with_context(|| format!("bad half-grid size in {spec:?}"))?;
        if n == 0 {
            bail!("the half-grid needs at least one source");
        }
        return Ok(Arc::new(build_half_grid(n)?));
    }
    let text = read(Path::new(spec))?;
    let net = PlanarNetwork::from_text(&text).with_context(|| format!("invalid network in {spec}"))?;
    Ok(Arc::new(net))
}

/// The network as given if it is already split, otherwise its split form.
pub fn split_network(net: Arc<PlanarNetwork>) -> Result<Arc<PlanarNetwork>> {
    if net.is_split() {
        return Ok(net);
    }
    Ok(Arc::new(net.vertex_split()?))
}

pub fn collection_pair(path: &Path) -> Result<(Collection, Collection)> {
    let text = read(path)?;
    parse_collection_pair(&text).with_context(|| format!("invalid collection pair in {}", path.display()))
}

/// `family:<spec>` or a collection-pair file.
pub fn relation(spec: &str) -> Result<QuadraticRelation> {
    if let Some(family) = spec.strip_prefix("family:") {
        let family: FamilySpec = family.parse()?;
        return Ok(family.build()?);
    }
    let (lhs, rhs) = collection_pair(Path::new(spec))?;
    Ok(QuadraticRelation::new(lhs, rhs)?)
}

pub fn subset(text: &str) -> Result<Subset> {
    text.parse().with_context(|| format!("bad subset {text:?}"))
}
