//! Cross-checks tree search against brute-force partition enumeration.

use gccf::oracle::{brute_force_optimum, count_feasible_partitions};
use gccf::{cfss, count_structures, order_edges, BoundKind, FunctionKind, InstanceSpec};

fn main() -> gccf::Result<()> {
    for seed in 0..5 {
        for kind in FunctionKind::ALL {
            let spec = InstanceSpec::barabasi_albert(9, 2, kind, seed)?;
            let f = spec.characteristic()?;
            let root = order_edges(&spec.root_graph()?)?;
            let (cs, expected) = brute_force_optimum(&spec.edges, spec.n, &f)?;
            let found = cfss(&root, &f, BoundKind::General)?;
            let partitions = count_feasible_partitions(&spec.edges, spec.n)?;
            println!(
                "seed {seed} {kind:<8} partitions {partitions:>5} tree {:>5}  oracle {expected:>10.4}  cfss {:>10.4}  {cs}",
                count_structures(&root),
                found.best_value,
            );
            assert!((found.best_value - expected).abs() < 1e-9);
        }
    }
    Ok(())
}
