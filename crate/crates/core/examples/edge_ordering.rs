//! Shows the balanced cut used to rank edges and its effect on search size.

use gccf::{cfss, cut, order_edges, BoundKind, FunctionKind, InstanceSpec, Subgraph};

fn main() -> gccf::Result<()> {
    let spec = InstanceSpec::barabasi_albert(15, 2, FunctionKind::CoalitionSize, 11)?;
    let whole = Subgraph::new((0..spec.n).collect(), &spec.edges);
    let first = cut(&whole)?;
    println!("part A   {:?}", first.part_a);
    println!("part B   {:?}", first.part_b);
    println!("cut set  {:?}", first.cut_set);

    let f = spec.characteristic()?;
    let input = spec.root_graph()?;
    let ordered = order_edges(&input)?;
    let ranked: Vec<_> = ordered.edges().iter().map(|e| (e.rank, e.u, e.v)).collect();
    println!("ranks    {ranked:?}");

    let plain = cfss(&input, &f, BoundKind::General)?;
    let tuned = cfss(&ordered, &f, BoundKind::General)?;
    println!("input order     {} nodes", plain.nodes_visited);
    println!("heuristic order {} nodes", tuned.nodes_visited);
    Ok(())
}
