//! Solves a random energy-purchasing instance to optimality and compares the
//! work done against plain enumeration.

use gccf::{cfss, enumerate, order_edges, BoundKind, FunctionKind, InstanceSpec};

fn main() -> gccf::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(14);
    let spec = InstanceSpec::barabasi_albert(n, 2, FunctionKind::Energy, 42)?;
    let f = spec.characteristic()?;
    let root = order_edges(&spec.root_graph()?)?;

    let best = cfss(&root, &f, BoundKind::General)?;
    println!("optimal value {:.3}", best.best_value);
    println!("coalitions    {}", best.best);
    println!(
        "cfss visited {} nodes, pruned {} ({:.1} ms)",
        best.nodes_visited,
        best.nodes_pruned,
        best.wall_time.as_secs_f64() * 1e3
    );

    let all = enumerate(&root, &f)?;
    println!(
        "enumeration visited {} nodes ({:.1} ms)",
        all.nodes_visited,
        all.wall_time.as_secs_f64() * 1e3
    );
    assert_eq!(all.best_value, best.best_value);
    Ok(())
}
