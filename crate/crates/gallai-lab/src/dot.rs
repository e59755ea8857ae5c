//! DOT rendering of decomposition trees for visual inspection.

use std::fmt::Write as _;

use gallai_core::{pair_index, GallaiTree};

/// Renders the tree as a DOT digraph: inner nodes labeled with their color
/// pair, leaves with their vertex id, child edges labeled by the cross color
/// against the next sibling group where that reads usefully (pairwise cross
/// colors go on the node label when the node has at most four children,
/// otherwise they are elided to keep the output readable).
pub fn tree_to_dot(tree: &GallaiTree) -> String {
    let mut out = String::from("digraph gallai {\n  node [shape=box, fontname=\"monospace\"];\n");
    let mut next_id = 0usize;
    render(tree, &mut next_id, &mut out);
    out.push_str("}\n");
    out
}

fn render(tree: &GallaiTree, next_id: &mut usize, out: &mut String) -> usize {
    let id = *next_id;
    *next_id += 1;
    match tree {
        GallaiTree::Leaf { vertex } => {
            let _ = writeln!(out, "  n{id} [label=\"v{vertex}\", shape=circle];");
        }
        GallaiTree::Node { pair, children, cross } => {
            let c = children.len();
            let mut label = format!("pair {}/{}", pair.0, pair.1);
            if c <= 4 {
                for i in 0..c {
                    for j in i + 1..c {
                        let _ =
                            write!(label, "\\n({i},{j}): {}", cross[pair_index(c, i, j)]);
                    }
                }
            } else {
                let _ = write!(label, "\\n{c} children");
            }
            let _ = writeln!(out, "  n{id} [label=\"{label}\"];");
            for (idx, child) in children.iter().enumerate() {
                let cid = render(child, next_id, out);
                let _ = writeln!(out, "  n{id} -> n{cid} [label=\"{idx}\"];");
            }
        }
    }
    id
}

#[cfg(test)]
mod tests {
    use super::*;
    use gallai_core::{random_gallai_tree, TreeParams};

    #[test]
    fn dot_output_names_every_leaf() {
        let tree = random_gallai_tree(12, &TreeParams::default(), 3).unwrap();
        let dot = tree_to_dot(&tree);
        assert!(dot.starts_with("digraph gallai {"));
        assert!(dot.ends_with("}\n"));
        for v in 0..12 {
            assert!(dot.contains(&format!("\"v{v}\"")), "leaf {v} missing");
        }
    }
}
