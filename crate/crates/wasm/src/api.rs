use serde::Serialize;
use serde_json::json;

use sumtrees::canon::symmetric_node_count;
use sumtrees::enumerate::{class_count, class_count_exact, TauTable};
use sumtrees::floateval::{self, Binding, Precision, Selector};
use sumtrees::{canonical_key, parse_labels, parse_shape, SdLabel, Tree};

pub const MAX_TABLE_N: usize = 40;

pub fn tau_table(max_n: usize) -> Result<String, String> {
    if !(1..=MAX_TABLE_N).contains(&max_n) {
        return Err(format!("max_n must be between 1 and {MAX_TABLE_N}"));
    }
    let t = TauTable::new(max_n);
    let rows: Vec<_> = (1..=max_n)
        .map(|n| {
            json!({
                "n": n,
                "tau": (1..n).map(|s| t.get(n, s).to_string()).collect::<Vec<_>>(),
                "alpha": t.row_sum(n).to_string(),
            })
        })
        .collect();
    Ok(json!({ "max_n": max_n, "rows": rows }).to_string())
}

#[derive(Serialize)]
struct Node {
    x: f64,
    depth: usize,
    /// Leaf label, or `S` / `D` for interior nodes.
    text: String,
    leaf: bool,
    parent: Option<usize>,
}

fn layout<L: std::fmt::Display>(
    t: &Tree<L>,
    depth: usize,
    parent: Option<usize>,
    next_leaf: &mut usize,
    out: &mut Vec<Node>,
) -> f64 {
    let id = out.len();
    out.push(Node {
        x: 0.0,
        depth,
        text: String::new(),
        leaf: t.is_leaf(),
        parent,
    });
    let (x, text) = match t.children() {
        None => {
            let x = *next_leaf as f64;
            *next_leaf += 1;
            (x, t.payload().map(|p| p.to_string()).unwrap_or_default())
        }
        Some((l, r)) => {
            let lx = layout(l, depth + 1, Some(id), next_leaf, out);
            let rx = layout(r, depth + 1, Some(id), next_leaf, out);
            let label = match t.sd_label() {
                Some(SdLabel::S) => "S",
                _ => "D",
            };
            ((lx + rx) / 2.0, label.to_string())
        }
    };
    out[id].x = x;
    out[id].text = text;
    x
}

pub fn inspect(expr: &str) -> Result<String, String> {
    let tree = parse_labels(expr).map_err(|e| e.to_string())?;
    let shape = tree.shape();
    let mut nodes = Vec::new();
    layout(&tree, 0, None, &mut 0, &mut nodes);
    let distinct = tree.duplicate_label().is_none();
    Ok(json!({
        "tree": tree.serialize(),
        "leaves": tree.leaf_count(),
        "depth": tree.depth(),
        "s_nodes": tree.s_node_count(),
        "d_nodes": tree.d_node_count(),
        "symmetric_nodes": symmetric_node_count(&shape),
        "canonical_labeled": if distinct { Some(canonical_key(&tree)) } else { None },
        "canonical_shape": canonical_key(&shape),
        "class_count_formula": class_count(&shape).map_err(|e| e.to_string())?.to_string(),
        "class_count": class_count_exact(&shape).to_string(),
        "nodes": nodes,
    })
    .to_string())
}

pub fn survey(binding: &str, selector: &str, precision: &str) -> Result<String, String> {
    let b = if binding.contains('\n') {
        Binding::parse_file(binding)
    } else {
        Binding::parse_inline(binding)
    }
    .map_err(|e| e.to_string())?;
    let p: Precision = precision.parse()?;
    let sel = match selector {
        "all" => Selector::All,
        "ladder" => Selector::Ladder,
        "pairwise" => Selector::Pairwise,
        other => match other.strip_prefix("shape:") {
            Some(s) => Selector::Shape(parse_shape(s).map_err(|e| e.to_string())?),
            None => return Err(format!("unknown selector {other:?}")),
        },
    };
    let r = floateval::survey(&b, p, &sel).map_err(|e| e.to_string())?;
    serde_json::to_string(&r).map_err(|e| e.to_string())
}
