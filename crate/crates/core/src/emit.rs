//! Text tables and DOT Hasse diagrams.
//!
//! Output is byte-stable for equal inputs: everything iterates in the
//! atlas's canonical order (Newton classes descending by dimension, EO
//! strata ascending by length) and no hash-ordered container is touched.

use std::fmt::Write;

use crate::atlas::StrataAtlas;
use crate::linalg::{rat_to_string, Rat};

fn rat_display(r: &Rat) -> String {
    if num_traits::One::is_one(r.denom()) {
        r.numer().to_string()
    } else {
        rat_to_string(r)
    }
}

fn vec_display(v: &[Rat]) -> String {
    let inner: Vec<String> = v.iter().map(rat_display).collect();
    format!("({})", inner.join(","))
}

/// Plain-text report of the whole atlas.
pub fn emit_text(atlas: &StrataAtlas) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "atlas {}", atlas.descriptor);
    let _ = writeln!(
        out,
        "mu = {}   mu_bar = {}   dim = {}",
        vec_display(
            &atlas
                .mu
                .iter()
                .map(|x| Rat::from(x.clone()))
                .collect::<Vec<_>>()
        ),
        vec_display(&atlas.mu_bar),
        rat_display(&atlas.shimura_dim)
    );
    let _ = writeln!(
        out,
        "split = {}   fully_hn = {}   coxeter_preset = {}",
        atlas.split, atlas.fully_hn, atlas.coxeter_preset
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "newton classes (descending dimension):");
    let _ = writeln!(
        out,
        "  {:<6} {:<28} {:>4} {:>7} {:>5} {:>8} {:>8}  {}",
        "label", "nu", "dim", "defect", "leaf", "dim_raw", "def_raw", "notes"
    );
    for c in &atlas.newton {
        let mut notes = Vec::new();
        if c.is_mu_ordinary {
            notes.push("mu-ordinary");
        }
        if c.is_basic {
            notes.push("basic");
        }
        let _ = writeln!(
            out,
            "  {:<6} {:<28} {:>4} {:>7} {:>5} {:>8} {:>8}  {}",
            c.label,
            vec_display(&c.nu),
            rat_display(&c.dim),
            rat_display(&c.defect),
            rat_display(&c.leaf_dim),
            rat_display(&c.dim_raw),
            rat_display(&c.defect_raw),
            notes.join(",")
        );
    }
    let _ = writeln!(
        out,
        "newton covers: {}",
        covers_display(&atlas.newton_covers, |i| { atlas.newton[i].label.clone() })
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "eo strata (ascending length):");
    let _ = writeln!(
        out,
        "  {:<6} {:<18} {:>4} {:>9} {:>8}  {}",
        "label", "word", "dim", "straight", "zip_dim", "newton class"
    );
    for s in &atlas.eo {
        let word = if s.word.is_empty() {
            "e".to_string()
        } else {
            s.word
                .iter()
                .map(|i| format!("s{}", i + 1))
                .collect::<Vec<_>>()
                .join("")
        };
        let class = match s.newton_index {
            Some(i) => atlas.newton[i].label.clone(),
            None => "-".to_string(),
        };
        let _ = writeln!(
            out,
            "  {:<6} {:<18} {:>4} {:>9} {:>8}  {}",
            s.label, word, s.length, s.sigma_straight, s.zip_orbit_dim, class
        );
    }
    let _ = writeln!(
        out,
        "eo covers: {}",
        covers_display(&atlas.eo_covers, |i| { atlas.eo[i].label.clone() })
    );
    if !atlas.warnings.is_empty() {
        let _ = writeln!(out);
        for w in &atlas.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
    }
    out
}

fn covers_display(covers: &[(usize, usize)], label: impl Fn(usize) -> String) -> String {
    if covers.is_empty() {
        return "none".into();
    }
    covers
        .iter()
        .map(|&(a, b)| format!("{}<{}", label(a), label(b)))
        .collect::<Vec<_>>()
        .join("  ")
}

/// Leaf-dimension table per Newton class.
pub fn emit_leaves_text(atlas: &StrataAtlas) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "central leaves {}", atlas.descriptor);
    let _ = writeln!(
        out,
        "  {:<6} {:<28} {:>9} {:>12}",
        "label", "nu", "leaf_dim", "stratum_dim"
    );
    for c in &atlas.newton {
        let _ = writeln!(
            out,
            "  {:<6} {:<28} {:>9} {:>12}",
            c.label,
            vec_display(&c.nu),
            rat_display(&c.leaf_dim),
            rat_display(&c.dim)
        );
    }
    out
}

/// A generic Hasse diagram: nodes labeled `name (dim d)`, edges oriented
/// from smaller to larger.
fn dot_graph(name: &str, nodes: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {name} {{");
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=box];");
    for n in nodes {
        let _ = writeln!(out, "  \"{n}\";");
    }
    for &(a, b) in edges {
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", nodes[a], nodes[b]);
    }
    let _ = writeln!(out, "}}");
    out
}

pub fn emit_newton_dot(atlas: &StrataAtlas) -> String {
    let nodes: Vec<String> = atlas
        .newton
        .iter()
        .map(|c| format!("{} (dim {})", c.label, rat_display(&c.dim)))
        .collect();
    dot_graph("newton", &nodes, &atlas.newton_covers)
}

pub fn emit_eo_dot(atlas: &StrataAtlas) -> String {
    let nodes: Vec<String> = atlas
        .eo
        .iter()
        .map(|s| format!("{} (dim {})", s.label, s.length))
        .collect();
    dot_graph("eo", &nodes, &atlas.eo_covers)
}

/// Both posets in one graph, as disjoint clusters.
pub fn emit_atlas_dot(atlas: &StrataAtlas) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph atlas {{");
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=box];");
    let _ = writeln!(out, "  subgraph cluster_newton {{");
    let _ = writeln!(out, "    label=\"newton\";");
    let newton_nodes: Vec<String> = atlas
        .newton
        .iter()
        .map(|c| format!("{} (dim {})", c.label, rat_display(&c.dim)))
        .collect();
    for n in &newton_nodes {
        let _ = writeln!(out, "    \"{n}\";");
    }
    for &(a, b) in &atlas.newton_covers {
        let _ = writeln!(
            out,
            "    \"{}\" -> \"{}\";",
            newton_nodes[a], newton_nodes[b]
        );
    }
    let _ = writeln!(out, "  }}");
    let _ = writeln!(out, "  subgraph cluster_eo {{");
    let _ = writeln!(out, "    label=\"eo\";");
    let eo_nodes: Vec<String> = atlas
        .eo
        .iter()
        .map(|s| format!("{} (dim {})", s.label, s.length))
        .collect();
    for n in &eo_nodes {
        let _ = writeln!(out, "    \"{n}\";");
    }
    for &(a, b) in &atlas.eo_covers {
        let _ = writeln!(out, "    \"{}\" -> \"{}\";", eo_nodes[a], eo_nodes[b]);
    }
    let _ = writeln!(out, "  }}");
    let _ = writeln!(out, "}}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preset;
    use crate::Caps;

    #[test]
    fn dot_singleton() {
        let d = crate::root_datum::build_datum(&crate::root_datum::ClassicalDatum::Gl { n: 2 })
            .unwrap();
        let atlas = crate::atlas::build_atlas(
            &d,
            &crate::linalg::ivec(&[0, 0]),
            &crate::atlas::AtlasConfig::default(),
            &Caps::default(),
        )
        .unwrap();
        let dot = emit_newton_dot(&atlas);
        assert_eq!(dot.matches("->").count(), 0);
        assert_eq!(dot.matches("\";").count(), 1);
    }

    #[test]
    fn dot_so9_chain() {
        let p = preset::orthogonal(7, preset::OrthogonalForm::Split).unwrap();
        let atlas = p.build(&Caps::default()).unwrap();
        let dot = emit_eo_dot(&atlas);
        // 8-node chain: 7 edges
        assert_eq!(dot.matches("->").count(), 7);
    }

    #[test]
    fn dot_so8_split_diamond() {
        let p = preset::orthogonal(6, preset::OrthogonalForm::Split).unwrap();
        let atlas = p.build(&Caps::default()).unwrap();
        let dot = emit_eo_dot(&atlas);
        // chain with one diamond at level n/2: 8 nodes, 8 cover edges
        assert_eq!(dot.matches("->").count(), 8);
        let text = emit_text(&atlas);
        assert!(text.contains("fully_hn = true"));
    }

    #[test]
    fn text_runs_are_identical() {
        let p = preset::quaternionic(&[(1, 1), (1, 1)]).unwrap();
        let a = emit_text(&p.build(&Caps::default()).unwrap());
        let b = emit_text(&p.build(&Caps::default()).unwrap());
        assert_eq!(a, b);
    }
}
