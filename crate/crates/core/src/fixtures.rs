//! Small named hypergraphs used across tests, benches and the CLI.

use crate::Hypergraph;

/// The Fano plane: 7 points, 7 lines of size 3. Not two colorable.
pub fn fano() -> Hypergraph {
    Hypergraph::new(
        7,
        [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]],
    )
    .expect("fano plane is well formed")
}

/// The triangle graph C3. Not two colorable.
pub fn triangle() -> Hypergraph {
    Hypergraph::new(3, [[0, 1], [1, 2], [0, 2]]).expect("triangle is well formed")
}

/// Two edges sharing one vertex: `{0,1}` and `{1,2}`.
pub fn path2() -> Hypergraph {
    Hypergraph::new(3, [[0, 1], [1, 2]]).expect("path is well formed")
}

/// All 3-subsets of 4 vertices.
pub fn complete_3_uniform_on_4() -> Hypergraph {
    Hypergraph::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
        .expect("K_4^(3) is well formed")
}
