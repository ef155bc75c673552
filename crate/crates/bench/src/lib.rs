//! Shared fixtures for the benchmark suite.

use mapdeg::{parse, ManifoldExpression};
use num_bigint::BigInt;

/// The census expressions used across benchmarks.
pub fn census_lines() -> Vec<&'static str> {
    vec![
        "lens(5,1)",
        "sfs(o 2; 0)",
        "sfs(o 0; -2; (2,1); (2,1); (3,1); (3,2))",
        "tb[[1,0],[0,1]]",
        "tsb(double-klein)",
        "sfs(o 0; 0; (2,1); (3,1); (6,1))",
        "S2xS1",
        "hyp(weeks)",
        "sfs(o 0; -1; (2,1); (3,1); (7,1))",
        "graph(tree-of-tori)",
        "mixed(one-cusp-glued)",
        "tb[[2,1],[1,1]]",
    ]
}

/// A witness-capable target mixing all five infinite classes.
pub fn mixed_target() -> ManifoldExpression {
    parse("ico # lens(7,2)*cyclic(3) # sfs(o 2; 0) # tb[[2,1],[1,1]] # nilother(h) # S2xS1")
        .expect("fixture parses")
}

/// A large sample parameter for membership and four-form benchmarks.
pub fn large_witness_degree(base: u64, l: i64) -> BigInt {
    let root = BigInt::from(base) * BigInt::from(l) + 1;
    let sq = &root * &root;
    &sq * &sq
}
