//! Small reference instances with known schedule lengths.
//!
//! Demand vectors are listed in canonical link order.

use crate::network::{gen_grid, gen_linear, gen_ring, Instance, Network};

/// Nodes 1 and 2 connected to each other and to node 3, which connects to
/// node 4.
pub fn four_node_network() -> Network {
    Network::new(4, [(1, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
}

/// The four-node network with demand 2 on `(3,4)` and 1 elsewhere. Optimum
/// is 3 slots; the all-outgoing-links restricted schedule needs 4.
pub fn four_node() -> Instance {
    Instance::new(four_node_network(), vec![1, 1, 1, 1, 1, 1, 2, 1]).unwrap()
}

/// The four-node network plus node 5 hanging off node 4. Its maximal
/// matching `{(1,3),(2,3),(5,4)}` is not induced by any maximal independent
/// node set.
pub fn five_node_network() -> Network {
    Network::new(5, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]).unwrap()
}

pub const LINEAR_DEMANDS: [[u64; 10]; 3] = [
    [5, 5, 5, 5, 5, 5, 5, 5, 5, 5],
    [6, 6, 4, 4, 8, 8, 5, 5, 7, 7],
    [6, 3, 4, 5, 7, 8, 5, 2, 7, 9],
];
pub const LINEAR_OPTIMA: [u64; 3] = [10, 16, 16];

pub const GRID_DEMANDS: [[u64; 24]; 2] = [
    [5; 24],
    [
        7, 8, 8, 4, 7, 2, 8, 1, 3, 1, 1, 9, 7, 4, 10, 1, 5, 4, 8, 8, 2, 5, 5, 7,
    ],
];
pub const GRID_OPTIMA: [u64; 2] = [10, 18];

pub const RING_DEMANDS: [[u64; 12]; 2] = [[5; 12], [2, 5, 10, 3, 4, 6, 7, 8, 9, 11, 4, 12]];
pub const RING_OPTIMA: [u64; 2] = [10, 23];

/// Six-node path with one of the [`LINEAR_DEMANDS`] rows.
pub fn linear(row: usize) -> Instance {
    Instance::new(gen_linear(6).unwrap(), LINEAR_DEMANDS[row].to_vec()).unwrap()
}

/// 3x3 grid with one of the [`GRID_DEMANDS`] rows.
pub fn grid(row: usize) -> Instance {
    Instance::new(gen_grid(3, 3).unwrap(), GRID_DEMANDS[row].to_vec()).unwrap()
}

/// Six-node ring with one of the [`RING_DEMANDS`] rows.
pub fn ring(row: usize) -> Instance {
    Instance::new(gen_ring(6).unwrap(), RING_DEMANDS[row].to_vec()).unwrap()
}

/// Seven-node tree: node 1 adjacent to 2, 3, 4; node 2 to 5, 6; node 4 to 7.
pub fn tree_network() -> Network {
    Network::new(7, [(1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (4, 7)]).unwrap()
}

/// The seven-node tree with demands whose two-phase schedule takes 10 + 8
/// slots.
pub fn tree() -> Instance {
    Instance::new(tree_network(), vec![9, 8, 10, 6, 3, 4, 2, 8, 5, 7, 8, 7]).unwrap()
}
