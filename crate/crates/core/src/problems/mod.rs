pub mod hitting_set;
pub mod spinglass;
pub mod tsp;
