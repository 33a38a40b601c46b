use std::collections::HashMap;
use std::fmt::Write;

use crate::cyclic::{Point3, Pyramid};

/// Triangle mesh with 1-based faces.
#[derive(Clone, Debug)]
pub struct ObjMesh {
    pub vertices: Vec<Point3>,
    pub faces: Vec<Vec<usize>>,
}

/// Base fan (normal −z) and lateral triangles (outward), apex last.
pub fn obj_from_pyramid(p: &Pyramid) -> ObjMesh {
    let n = p.base.len();
    let mut vertices = p.base.clone();
    vertices.push(p.apex.clone());
    let apex = n + 1;
    let mut faces = Vec::new();
    for i in 1..n - 1 {
        faces.push(vec![1, i + 2, i + 1]);
    }
    for i in 1..=n {
        faces.push(vec![i, i % n + 1, apex]);
    }
    ObjMesh { vertices, faces }
}

impl ObjMesh {
    pub fn render(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            let _ = writeln!(s, "v {} {} {}", v.x.to_fixed(9), v.y.to_fixed(9), v.z.to_fixed(9));
        }
        for f in &self.faces {
            let idx: Vec<String> = f.iter().map(usize::to_string).collect();
            let _ = writeln!(s, "f {}", idx.join(" "));
        }
        s
    }

    /// Every undirected edge is used by exactly two faces, once in each
    /// direction (closed and consistently oriented).
    pub fn is_watertight(&self) -> bool {
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for f in &self.faces {
            for i in 0..f.len() {
                *directed.entry((f[i], f[(i + 1) % f.len()])).or_default() += 1;
            }
        }
        directed.iter().all(|((a, b), c)| *c == 1 && directed.get(&(*b, *a)) == Some(&1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::pyramid;
    use crate::numerics::{Precision, Real};

    #[test]
    fn square_pyramid_mesh() {
        let p = Precision::new(30).unwrap();
        let py = pyramid(&Real::one(p), &vec![Real::one(p); 4]).unwrap();
        let mesh = obj_from_pyramid(&py);
        assert_eq!(mesh.vertices.len(), 5);
        assert_eq!(mesh.faces.len(), 6);
        assert!(mesh.is_watertight());
        let text = mesh.render();
        assert!(text.ends_with("f 4 1 5\n"));
        assert!(text.contains("v 0.000000000 0.000000000 0.707106781\n"));
    }
}
