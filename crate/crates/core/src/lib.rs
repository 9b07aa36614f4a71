//! Exact average range of Lipschitz mappings of rooted graphs.
//!
//! An M-Lipschitz mapping (graph-indexed random walk) labels the vertices
//! of a connected rooted graph with integers, the root with 0, so that
//! adjacent labels differ by at most `M` (or exactly `M` in the strong
//! variant). The average range is the mean number of distinct labels over
//! all such mappings. This crate computes it exactly by enumeration and by
//! closed forms for paths, cycles, complete, complete bipartite and star
//! graphs, and sweeps small graphs to check extremality statements.
//!
//! ```
//! use lipwalk_core::{avg1_path, avg_range_bruteforce, make_path, ExactRational, Mode};
//!
//! let p5 = make_path(5).unwrap();
//! let brute = avg_range_bruteforce(&p5, Mode::Weak(1)).unwrap();
//! assert_eq!(brute.average(), &ExactRational::new(227, 81));
//! assert_eq!(avg1_path(5).unwrap(), ExactRational::new(227, 81));
//! ```

pub mod closed_forms;
pub mod combinatorics;
pub mod error;
pub mod graph;
pub mod harness;
pub mod io;
pub mod lipschitz;
pub mod rational;

pub use closed_forms::*;
pub use combinatorics::{
    binomial, central_trinomial, irregular_trinomial, motzkin, path_endpoint_distribution,
    path_endpoint_probability, trinomial, MotzkinTable, TrinomialTable,
};
pub use error::{Error, Result};
pub use graph::{
    classify, kc_transform, make_complete, make_complete_bipartite, make_corolla, make_cycle,
    make_path, make_star, side_vertices, swap_automorphism_exists, GraphClassTag, RootedGraph,
    Vertex,
};
pub use lipschitz::{
    avg_range_bruteforce, avg_range_bruteforce_parallel, avg_range_root_invariance_check,
    count_mappings, enumerate_mappings, mapping_stats, range_of, AvgRangeReport, LipschitzMapping,
    Mode, RangeStats, Source,
};
pub use rational::{Approx, ExactRational};

/// Serde helpers writing big integers as decimal strings.
pub(crate) mod decimal {
    use std::str::FromStr;

    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::from_str(&s).map_err(serde::de::Error::custom)
    }
}
