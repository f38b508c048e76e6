//! Instance descriptors.
//!
//! ```text
//! (cayley|cayleysum):GROUP:s1,s2,...
//!     GROUP = zn:N | dn:N | sn:N | prod:GROUP+GROUP | table:FILE
//! cycle:N | path:N | complete:N | petersen | hypercube:K | file:PATH
//! ```
//! Elements are group labels; for zn any integer is read modulo N.

use std::path::Path;

use super::files::{load_file, read_json, BuildMetadata, Loaded};
use crate::cayley::{
    build_cayley, build_cayley_sum, cayley_bipartite_algebraic, cayley_sum_bipartite_certificate,
    cayley_sum_connected_algebraic, BipartiteCertificate,
};
use crate::error::{Error, Result};
use crate::graph::{families, Graph};
use crate::group::{make_group, FiniteGroup, GroupJson, GroupKind, DEFAULT_ORDER_CAP};
use crate::verify::{GraphClass, Instance, Overrides};

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{what}: expected a nonnegative integer, got {s:?}")))
}

pub fn parse_group(spec: &str) -> Result<FiniteGroup> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("group {spec:?}: expected KIND:ARG")))?;
    let kind = match kind {
        "zn" => GroupKind::Cyclic(parse_usize(arg, "zn")?),
        "dn" => GroupKind::Dihedral(parse_usize(arg, "dn")?),
        "sn" => GroupKind::Symmetric(parse_usize(arg, "sn")?),
        "prod" => {
            let parts: Vec<&str> = arg.split('+').collect();
            if parts.len() < 2 {
                return Err(Error::Parse(format!("prod:{arg}: expected A+B")));
            }
            let mut acc = parse_group(parts[0])?;
            for p in &parts[1..] {
                let next = parse_group(p)?;
                acc = make_group(
                    GroupKind::DirectProduct(Box::new(acc), Box::new(next)),
                    DEFAULT_ORDER_CAP,
                )?;
            }
            return Ok(acc);
        }
        "table" => {
            let j: GroupJson = read_json(Path::new(arg))?;
            return make_group(
                GroupKind::FromTable {
                    table: j.table,
                    labels: j.labels,
                },
                DEFAULT_ORDER_CAP,
            );
        }
        other => return Err(Error::Parse(format!("unknown group kind {other:?}"))),
    };
    make_group(kind, DEFAULT_ORDER_CAP)
}

/// Splits on commas outside parentheses.
fn split_elements(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur);
    out.into_iter()
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect()
}

fn integer_labels(x: &FiniteGroup) -> bool {
    x.labels().iter().enumerate().all(|(i, l)| *l == i.to_string())
}

fn parse_element(x: &FiniteGroup, token: &str) -> Result<usize> {
    if let Some(i) = x.find_label(token) {
        return Ok(i);
    }
    if integer_labels(x) {
        if let Ok(v) = token.parse::<i64>() {
            return Ok(v.rem_euclid(x.order() as i64) as usize);
        }
    }
    Err(Error::Parse(format!("{token:?} is not an element of the group")))
}

fn cayley_instance(desc: &str, sum: bool, body: &str) -> Result<Loaded> {
    let (group_spec, elems) = body
        .rsplit_once(':')
        .ok_or_else(|| Error::Parse(format!("{desc:?}: expected GROUP:s1,s2,...")))?;
    let x = parse_group(group_spec)?;
    let items = split_elements(elems)
        .iter()
        .map(|t| parse_element(&x, t))
        .collect::<Result<Vec<_>>>()?;
    let s = x.subset(items);
    let (g, class, connected_algebraic, bipartite_method) = if sum {
        let g = build_cayley_sum(&x, &s)?;
        let method = match cayley_sum_bipartite_certificate(&x, &s)? {
            BipartiteCertificate::BipartiteCertified => "bfs; index-2 subgroup certificate",
            BipartiteCertificate::Unknown => "bfs",
        };
        (
            g,
            GraphClass::CayleySum,
            cayley_sum_connected_algebraic(&x, &s)?,
            method,
        )
    } else {
        let g = build_cayley(&x, &s)?;
        let algebraic = cayley_bipartite_algebraic(&x, &s)?;
        if algebraic != g.is_bipartite().is_bipartite() {
            return Err(Error::InvalidGraph("bipartiteness criteria disagree".into()));
        }
        let connected = x.generated_subgroup(&s).len() == x.order();
        (g, GraphClass::Cayley, connected, "bfs; index-2 subgroups")
    };
    let identity = s.contains(x.identity());
    let mut meta = BuildMetadata::for_graph(&g, Some(desc.to_string()), class);
    meta.identity_in_generators = identity && !sum;
    meta.connected_algebraic = Some(connected_algebraic);
    meta.bipartite_method = bipartite_method.into();
    meta.labels = Some(x.labels().to_vec());
    let inst = Instance::new(desc, g).with_class(class, meta.identity_in_generators);
    Ok(plain(inst, meta))
}

fn plain(instance: Instance, metadata: BuildMetadata) -> Loaded {
    Loaded {
        instance,
        metadata,
        overrides: Overrides::new(),
        ids: None,
        config: None,
    }
}

fn family(desc: &str, g: Graph) -> Loaded {
    let meta = BuildMetadata::for_graph(&g, Some(desc.to_string()), GraphClass::Generic);
    plain(Instance::new(desc, g), meta)
}

fn bounded(s: &str, what: &str, min: usize, max: usize) -> Result<usize> {
    let v = parse_usize(s, what)?;
    if v < min || v > max {
        return Err(Error::Parse(format!("{what}:{v} is outside {min}..={max}")));
    }
    Ok(v)
}

/// Builds an instance from a descriptor string.
pub fn parse_descriptor(desc: &str) -> Result<Loaded> {
    let desc = desc.trim();
    let (kind, rest) = desc.split_once(':').unwrap_or((desc, ""));
    match kind {
        "cayley" => cayley_instance(desc, false, rest),
        "cayleysum" => cayley_instance(desc, true, rest),
        "cycle" => Ok(family(desc, families::cycle(bounded(rest, "cycle", 3, 4096)?))),
        "path" => Ok(family(desc, families::path(bounded(rest, "path", 1, 4096)?))),
        "complete" => Ok(family(desc, families::complete(bounded(rest, "complete", 1, 4096)?))),
        "hypercube" => Ok(family(desc, families::hypercube(bounded(rest, "hypercube", 0, 12)?))),
        "petersen" if rest.is_empty() => Ok(family(desc, families::petersen())),
        "file" => load_file(Path::new(rest)),
        _ => Err(Error::Parse(format!("unrecognised descriptor {desc:?}"))),
    }
}
