//! Runs the search under growing node budgets and shows the incumbent, the
//! upper bound and the performance ratio tightening.

use gccf::{cfss_anytime, order_edges, BoundKind, Budget, FunctionKind, InstanceSpec};

fn main() -> gccf::Result<()> {
    let spec = InstanceSpec::barabasi_albert(18, 2, FunctionKind::CoalitionSize, 5)?;
    let f = spec.characteristic()?;
    let root = order_edges(&spec.root_graph()?)?;

    println!("{:>8} {:>12} {:>12} {:>10} {:>9}", "budget", "value", "bound", "mpr", "complete");
    for budget in [0u64, 10, 100, 1_000, 10_000, 100_000] {
        let r = cfss_anytime(&root, &f, BoundKind::General, Budget::nodes(budget))?;
        println!(
            "{budget:>8} {:>12.3} {:>12.3} {:>10.4} {:>9}",
            r.best_value, r.upper_bound, r.mpr, r.completed
        );
    }
    Ok(())
}
