pub mod algebra;
pub mod cyclic;
pub mod emit;
pub mod euclid;
pub mod numerics;
pub mod parallel;
pub mod script;
