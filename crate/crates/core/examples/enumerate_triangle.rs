//! Walks the whole search tree of a triangle and prints every coalition
//! structure it reaches.

use gccf::{ContractionGraph, CoalitionStructure};

fn walk(g: &ContractionGraph, depth: usize, out: &mut Vec<(usize, CoalitionStructure)>) {
    out.push((depth, g.as_coalition_structure()));
    for child in g.children() {
        walk(&child, depth + 1, out);
    }
}

fn main() -> gccf::Result<()> {
    let root = ContractionGraph::from_instance_graph(&[(0, 1), (1, 2), (0, 2)], 3)?;
    let mut seen = Vec::new();
    walk(&root, 0, &mut seen);
    for (depth, cs) in &seen {
        println!("{}{cs}", "  ".repeat(*depth));
    }
    println!("{} feasible coalition structures", seen.len());
    Ok(())
}
