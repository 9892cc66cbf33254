//! Solves the same instance with several worker counts. The optimum does not
//! depend on the number of workers.

use gccf::{cfss_parallel, order_edges, BoundKind, FunctionKind, InstanceSpec};

fn main() -> gccf::Result<()> {
    let spec = InstanceSpec::barabasi_albert(18, 2, FunctionKind::Energy, 3)?;
    let f = spec.characteristic()?;
    let root = order_edges(&spec.root_graph()?)?;

    for workers in [1, 2, 4, 8] {
        let r = cfss_parallel(&root, &f, BoundKind::General, workers)?;
        println!(
            "{workers} worker(s): value {:.4}, {} nodes, {:.1} ms",
            r.best_value,
            r.nodes_visited,
            r.wall_time.as_secs_f64() * 1e3
        );
    }
    Ok(())
}
