//! Odd colorings of graphs and graphs embedded on surfaces.

pub mod coloring;
pub mod discharging;
pub mod graph;
pub mod reductions;
pub mod solver;
