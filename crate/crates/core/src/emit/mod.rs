//! Deterministic text emitters: SVG 1.1 figures and Wavefront OBJ meshes.

mod obj;
mod svg;

pub use obj::{obj_from_pyramid, ObjMesh};
pub use svg::SvgScene;
