//! JSON and DOT rendering of the four quivers.

use std::fmt::Write as _;

use cluster_lattice::cambrian::CambrianQuiver;
use cluster_lattice::quivers::{CClusterQuiver, ClusterQuiver, ExchangeQuiver, TauTiltingShadow, VarId};
use cluster_lattice::rootsys::Root;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct Vertex {
    pub id: usize,
    pub payload: Value,
    #[serde(skip)]
    pub label: String,
}

#[derive(Serialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub out: String,
    #[serde(rename = "in")]
    pub inn: String,
}

/// A quiver flattened to string-labelled vertices and edges.
#[derive(Serialize)]
pub struct Export {
    #[serde(skip)]
    pub name: &'static str,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl Export {
    fn from_quiver<V, L>(
        name: &'static str,
        q: &ClusterQuiver<V, L>,
        vertex: impl Fn(&V) -> (Value, String),
        label: impl Fn(&L) -> String,
    ) -> Self {
        let vertices = q
            .vertices
            .iter()
            .enumerate()
            .map(|(id, v)| {
                let (payload, label) = vertex(v);
                Vertex { id, payload, label }
            })
            .collect();
        let edges =
            q.edges.iter().map(|e| Edge { src: e.src, dst: e.dst, out: label(&e.out), inn: label(&e.inn) }).collect();
        Export { name, vertices, edges }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("export is plain data");
        s.push('\n');
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph {} {{\n", self.name);
        for v in &self.vertices {
            let _ = writeln!(s, "  {} [label=\"{}\"];", v.id, escape(&v.label));
        }
        for e in &self.edges {
            let _ = writeln!(s, "  {} -> {} [label=\"{} / {}\"];", e.src, e.dst, escape(&e.out), escape(&e.inn));
        }
        s.push_str("}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn roots(rs: &[Root]) -> Vec<String> {
    rs.iter().map(Root::to_string).collect()
}

fn set_label(items: &[String]) -> String {
    format!("{{{}}}", items.join(","))
}

fn vector<T: ToString>(xs: &[T]) -> String {
    format!("[{}]", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

/// First 16 hex digits of the SHA-256 of the polynomial's canonical string.
fn poly_hash(s: &str) -> String {
    Sha256::digest(s.as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn exchange(ex: &ExchangeQuiver, verbose: bool) -> Export {
    let var = |id: VarId| {
        let poly = ex.variable(id).to_string();
        let mut v = json!({
            "denominator": ex.variable_root(id).to_string(),
            "hash": poly_hash(&poly),
        });
        if verbose {
            v["polynomial"] = Value::String(poly);
        }
        v
    };
    Export::from_quiver(
        "exchange",
        &ex.quiver,
        |v| {
            let mut ids = v.vars.clone();
            ids.sort_by(|a, b| ex.variable_root(*a).cmp(ex.variable_root(*b)));
            let dens: Vec<String> = ids.iter().map(|&i| ex.variable_root(i).to_string()).collect();
            let payload = json!({
                "variables": ids.iter().map(|&i| var(i)).collect::<Vec<_>>(),
                "c_vectors": ids.iter().map(|&i| vector(&v.c_vector(i).unwrap_or_default())).collect::<Vec<_>>(),
                "g_vectors": ids.iter().map(|&i| vector(&v.g_vector(i).unwrap_or_default())).collect::<Vec<_>>(),
            });
            (payload, set_label(&dens))
        },
        |&id| ex.variable_root(id).to_string(),
    )
}

pub fn c_clusters(q: &CClusterQuiver) -> Export {
    Export::from_quiver(
        "cclusters",
        q,
        |cl| {
            let rs = roots(cl.roots());
            (json!({ "roots": rs }), set_label(&rs))
        },
        Root::to_string,
    )
}

pub fn cambrian(q: &CambrianQuiver) -> Export {
    Export::from_quiver(
        "cambrian",
        q,
        |s| {
            let word: Vec<usize> = s.word().iter().map(|i| i + 1).collect();
            let payload = json!({
                "sorting_word": s.to_string(),
                "word": word,
                "inversions": roots(&s.inversions),
            });
            (payload, s.to_string())
        },
        |rs| roots(rs).join(","),
    )
}

fn shadow_label(sh: &TauTiltingShadow) -> (Value, String) {
    let module = roots(&sh.module_part);
    let projective: Vec<usize> = sh.projective_part.iter().map(|i| i + 1).collect();
    let p: Vec<String> = projective.iter().map(|i| format!("P{i}")).collect();
    let payload = json!({ "module": module, "projective": projective, "m_size": sh.m_size });
    (payload, format!("({}, {})", set_label(&module), set_label(&p)))
}

pub fn tau_tilting(q: &ClusterQuiver<TauTiltingShadow, Root>) -> Export {
    Export::from_quiver("tautilt", q, shadow_label, Root::to_string)
}
