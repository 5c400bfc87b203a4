//! The cut region: the sphere cut open along disjoint paths from the base
//! point to the punctures, as a triangulated polygon.
//!
//! Boundary vertices alternate between copies of the base point (corners
//! `V_0, …, V_{m-1}`, with `V_m = V_0`) and the punctures `P_1, …, P_m`; the
//! boundary edge labelled `γ_i` runs `V_{i-1} → P_i → V_i`, so the boundary
//! word is `γ_1 γ_2 ⋯ γ_m`. The interior base point `p_0` is the center and
//! the level-zero triangulation is the fan from it, oriented
//! counterclockwise. Refinement splits every triangle into four.

use std::collections::HashMap;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Center,
    /// Copy `V_k` of the base point, `0 ≤ k < m`.
    Corner(usize),
    /// Puncture `P_{i+1}` (zero-based `i`).
    Puncture(usize),
    /// Midpoint vertex introduced by refinement.
    Interior,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FundamentalPolygon {
    punctures: usize,
    level: usize,
    positions: Vec<[f64; 2]>,
    kinds: Vec<VertexKind>,
    parents: Vec<Option<(usize, usize)>>,
    triangles: Vec<[usize; 3]>,
    base_triangles: Vec<[usize; 3]>,
}

impl FundamentalPolygon {
    pub fn new(punctures: usize) -> Self {
        let n = 2 * punctures;
        let mut positions = vec![[0.0, 0.0]];
        let mut kinds = vec![VertexKind::Center];
        for j in 0..n {
            let angle = 2.0 * PI * j as f64 / n as f64;
            positions.push([angle.cos(), angle.sin()]);
            kinds.push(if j % 2 == 0 {
                VertexKind::Corner(j / 2)
            } else {
                VertexKind::Puncture(j / 2)
            });
        }
        let triangles: Vec<[usize; 3]> = (0..n).map(|j| [0, 1 + j, 1 + (j + 1) % n]).collect();
        FundamentalPolygon {
            punctures,
            level: 0,
            parents: vec![None; positions.len()],
            positions,
            kinds,
            base_triangles: triangles.clone(),
            triangles,
        }
    }

    /// Polygon refined `level` times.
    pub fn at_level(punctures: usize, level: usize) -> Self {
        (0..level).fold(Self::new(punctures), |p, _| p.refined())
    }

    pub fn refined(&self) -> Self {
        let mut out = self.clone();
        out.level += 1;
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |out: &mut FundamentalPolygon, a: usize, b: usize| -> usize {
            let key = (a.min(b), a.max(b));
            *midpoints.entry(key).or_insert_with(|| {
                let (pa, pb) = (out.positions[a], out.positions[b]);
                out.positions.push([(pa[0] + pb[0]) / 2.0, (pa[1] + pb[1]) / 2.0]);
                out.kinds.push(VertexKind::Interior);
                out.parents.push(Some(key));
                out.positions.len() - 1
            })
        };
        let mut triangles = Vec::with_capacity(4 * self.triangles.len());
        for &[a, b, c] in &self.triangles {
            let ab = midpoint(&mut out, a, b);
            let bc = midpoint(&mut out, b, c);
            let ca = midpoint(&mut out, c, a);
            triangles.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
        }
        out.triangles = triangles;
        out
    }

    pub fn punctures(&self) -> usize {
        self.punctures
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn position(&self, v: usize) -> [f64; 2] {
        self.positions[v]
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    /// For refinement vertices, the edge whose midpoint they are.
    pub fn parents(&self, v: usize) -> Option<(usize, usize)> {
        self.parents[v]
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// The level-zero fan triangles `[center, b_j, b_{j+1}]`.
    pub fn base_triangles(&self) -> &[[usize; 3]] {
        &self.base_triangles
    }

    pub fn center(&self) -> usize {
        0
    }

    /// Vertex index of corner `V_k` (`V_m` is `V_0`).
    pub fn corner(&self, k: usize) -> usize {
        1 + 2 * (k % self.punctures.max(1))
    }

    /// Vertex index of puncture `P_{i+1}`.
    pub fn puncture(&self, i: usize) -> usize {
        2 + 2 * i
    }

    /// Labels of the boundary edges in order: `γ_1 ⋯ γ_m`.
    pub fn boundary_word(&self) -> Vec<usize> {
        (1..=self.punctures).collect()
    }

    /// The boundary edge `γ_{i+1}` as the vertex path `V_i → P_{i+1} → V_{i+1}`.
    pub fn boundary_edge(&self, i: usize) -> [usize; 3] {
        [self.corner(i), self.puncture(i), self.corner(i + 1)]
    }

    /// Signed area of a triangle in the plane embedding.
    pub fn signed_area(&self, t: [usize; 3]) -> f64 {
        let [a, b, c] = t.map(|v| self.positions[v]);
        0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
    }

    /// Checks that the triangles form an oriented disk: every directed
    /// edge is used at most once, and interior edges are used once in each
    /// direction.
    pub fn is_oriented_disk(&self) -> bool {
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for &[a, b, c] in &self.triangles {
            for e in [(a, b), (b, c), (c, a)] {
                *directed.entry(e).or_default() += 1;
            }
        }
        if directed.values().any(|&n| n > 1) {
            return false;
        }
        let boundary = directed.keys().filter(|&&(a, b)| !directed.contains_key(&(b, a))).count();
        let edges = directed.len() - (directed.len() - boundary) / 2;
        let euler = self.vertex_count() as i64 - edges as i64 + self.triangles.len() as i64;
        self.punctures < 2 || euler == 1
    }
}
