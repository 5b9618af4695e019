//! Strictly convex polyhedra as half-edge meshes with plane-based vertices.
//!
//! A [`ConvexCell`] is a closed orientable 2-manifold whose faces carry their
//! supporting [`Plane`] by value and whose vertices are [`HomoPoint`]s. The
//! core operation is [`ConvexCell::cut`]: split the cell in place against a
//! plane via edge descent and marching, touching only the neighborhood of the
//! cut cross-section plus the separated part.
//!
//! Element arrays are index-stable with free lists, so a cut never moves the
//! untouched side.

mod cut;

pub use cut::{CutCounters, CutOutcome, CutScratch};

use crate::error::Error;
use crate::planes::{classify_vertex, HomoPoint, Plane, Side, Width};
use crate::poly::PlanePoly;

pub const INVALID: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub(crate) struct Vertex<W: Width> {
    pub point: HomoPoint<W>,
    /// One outgoing half-edge, INVALID when the slot is free.
    pub out: u32,
}

#[derive(Debug, Clone, Copy)]
pub struct HalfEdge {
    /// Origin vertex, INVALID when the slot is free.
    pub origin: u32,
    pub twin: u32,
    pub next: u32,
    pub prev: u32,
    pub face: u32,
}

#[derive(Debug, Clone, Copy)]
pub struct Face {
    /// Supporting plane, oriented outward.
    pub plane: Plane,
    /// One half-edge of the face loop, INVALID when the slot is free.
    pub hedge: u32,
    /// Opaque caller-owned annotation (BSP node index during extraction).
    pub tag: u64,
}

/// Half-edge mesh of a strictly convex polyhedron.
#[derive(Debug, Clone)]
pub struct ConvexCell<W: Width> {
    verts: Vec<Vertex<W>>,
    hedges: Vec<HalfEdge>,
    faces: Vec<Face>,
    free_verts: Vec<u32>,
    free_hedges: Vec<u32>,
    free_faces: Vec<u32>,
    /// Warm start for the next cut's edge descent.
    cut_hint: u32,
}

impl<W: Width> ConvexCell<W> {
    /// Axis-aligned box with outward canonical face planes.
    pub fn make_box(lo: [i64; 3], hi: [i64; 3]) -> Result<Self, Error> {
        if lo.iter().zip(&hi).any(|(&l, &h)| l >= h) {
            return Err(Error::DegenerateBox);
        }
        let corner = |i: usize| {
            [
                if i & 1 == 0 { lo[0] } else { hi[0] },
                if i & 2 == 0 { lo[1] } else { hi[1] },
                if i & 4 == 0 { lo[2] } else { hi[2] },
            ]
        };
        let points: Vec<HomoPoint<W>> = (0..8).map(|i| HomoPoint::from_int_point(corner(i))).collect();
        let loops: [([u32; 4], Plane); 6] = [
            ([1, 3, 7, 5], Plane::new(1, 0, 0, -(hi[0] as i128))),
            ([0, 4, 6, 2], Plane::new(-1, 0, 0, lo[0] as i128)),
            ([2, 6, 7, 3], Plane::new(0, 1, 0, -(hi[1] as i128))),
            ([0, 1, 5, 4], Plane::new(0, -1, 0, lo[1] as i128)),
            ([4, 5, 7, 6], Plane::new(0, 0, 1, -(hi[2] as i128))),
            ([0, 2, 3, 1], Plane::new(0, 0, -1, lo[2] as i128)),
        ];
        let faces: Vec<(Vec<u32>, Plane)> =
            loops.iter().map(|(l, p)| (l.to_vec(), *p)).collect();
        Self::from_face_loops(points, &faces)
    }

    /// Build from explicit CCW-from-outside vertex loops. Twins are derived
    /// from matching directed edges; every edge must appear in both
    /// directions exactly once.
    pub fn from_face_loops(
        points: Vec<HomoPoint<W>>,
        face_loops: &[(Vec<u32>, Plane)],
    ) -> Result<Self, Error> {
        let mut cell = ConvexCell {
            verts: points
                .into_iter()
                .map(|point| Vertex { point, out: INVALID })
                .collect(),
            hedges: Vec::new(),
            faces: Vec::new(),
            free_verts: Vec::new(),
            free_hedges: Vec::new(),
            free_faces: Vec::new(),
            cut_hint: 0,
        };
        let mut edge_map = std::collections::HashMap::new();
        for (loop_verts, plane) in face_loops {
            let fid = cell.faces.len() as u32;
            let base = cell.hedges.len() as u32;
            let n = loop_verts.len() as u32;
            cell.faces.push(Face {
                plane: *plane,
                hedge: base,
                tag: 0,
            });
            for (i, &v) in loop_verts.iter().enumerate() {
                let h = base + i as u32;
                let nxt = base + (i as u32 + 1) % n;
                let prv = base + (i as u32 + n - 1) % n;
                cell.hedges.push(HalfEdge {
                    origin: v,
                    twin: INVALID,
                    next: nxt,
                    prev: prv,
                    face: fid,
                });
                cell.verts[v as usize].out = h;
                let w = loop_verts[(i + 1) % loop_verts.len()];
                if edge_map.insert((v, w), h).is_some() {
                    return Err(Error::DegenerateBox);
                }
            }
        }
        for ((v, w), &h) in &edge_map {
            let t = *edge_map.get(&(*w, *v)).ok_or(Error::DegenerateBox)?;
            cell.hedges[h as usize].twin = t;
        }
        Ok(cell)
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len() - self.free_verts.len()
    }

    pub fn edge_count(&self) -> usize {
        (self.hedges.len() - self.free_hedges.len()) / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len() - self.free_faces.len()
    }

    pub fn point(&self, v: u32) -> &HomoPoint<W> {
        &self.verts[v as usize].point
    }

    pub fn hedge(&self, h: u32) -> &HalfEdge {
        &self.hedges[h as usize]
    }

    pub fn face(&self, f: u32) -> &Face {
        &self.faces[f as usize]
    }

    pub fn set_face_tag(&mut self, f: u32, tag: u64) {
        self.faces[f as usize].tag = tag;
    }

    pub fn dest(&self, h: u32) -> u32 {
        self.hedges[self.hedges[h as usize].next as usize].origin
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.verts
            .iter()
            .enumerate()
            .filter(|(_, v)| v.out != INVALID)
            .map(|(i, _)| i as u32)
    }

    pub fn face_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.hedge != INVALID)
            .map(|(i, _)| i as u32)
    }

    pub fn hedge_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.hedges
            .iter()
            .enumerate()
            .filter(|(_, h)| h.origin != INVALID)
            .map(|(i, _)| i as u32)
    }

    /// Half-edges of a face loop starting at its stored half-edge.
    pub fn face_loop(&self, f: u32) -> FaceLoop<'_, W> {
        let start = self.faces[f as usize].hedge;
        FaceLoop {
            cell: self,
            start,
            cur: start,
            done: false,
        }
    }

    /// Outgoing half-edges around a vertex (counterclockwise).
    pub fn vertex_ring(&self, v: u32) -> VertexRing<'_, W> {
        let start = self.verts[v as usize].out;
        VertexRing {
            cell: self,
            start,
            cur: start,
            done: false,
        }
    }

    /// Every face as a plane-based polygon: supporting plane, neighbor planes
    /// as the ordered boundary list, resolved corner points, and the face tag.
    pub fn face_poly(&self, f: u32) -> PlanePoly<W> {
        let mut bounds = Vec::new();
        let mut corners = Vec::new();
        let hedges: Vec<u32> = self.face_loop(f).collect();
        for (i, &h) in hedges.iter().enumerate() {
            // boundary plane i is the twin face of edge i, which runs from
            // corner i-1 to corner i in our convention
            let twin_face = self.hedges[self.hedges[h as usize].twin as usize].face;
            bounds.push(self.faces[twin_face as usize].plane);
            let next = hedges[(i + 1) % hedges.len()];
            corners.push(self.verts[self.hedges[next as usize].origin as usize].point);
        }
        PlanePoly {
            support: self.faces[f as usize].plane,
            bounds,
            corners,
            tag: self.faces[f as usize].tag,
        }
    }

    /// First strict side of the plane among the cell's vertices, if any.
    pub fn strict_side_of(&self, s: &Plane) -> Option<Side> {
        for v in self.vertex_ids() {
            match classify_vertex(&self.verts[v as usize].point, s) {
                Side::On => continue,
                side => return Some(side),
            }
        }
        None
    }

    /// ASCII polygon-soup dump with rounded f64 positions (diagnostics only).
    pub fn dump_off(&self) -> String {
        use std::fmt::Write;
        let vids: Vec<u32> = self.vertex_ids().collect();
        let index: std::collections::HashMap<u32, usize> =
            vids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut s = String::from("OFF\n");
        let _ = writeln!(s, "{} {} 0", vids.len(), self.face_count());
        for &v in &vids {
            let p = self.verts[v as usize].point.to_f64_point();
            let _ = writeln!(s, "{} {} {}", p[0], p[1], p[2]);
        }
        for f in self.face_ids() {
            let loop_verts: Vec<usize> = self
                .face_loop(f)
                .map(|h| index[&self.hedges[h as usize].origin])
                .collect();
            let _ = write!(s, "{}", loop_verts.len());
            for v in loop_verts {
                let _ = write!(s, " {}", v);
            }
            let _ = writeln!(s);
        }
        s
    }

    /// Structural and geometric invariants: closed orientable 2-manifold,
    /// Euler characteristic 2, planar faces, strict convexity.
    pub fn validate(&self) -> Result<(), String> {
        let live_h: Vec<u32> = self.hedge_ids().collect();
        if live_h.is_empty() {
            return Err("empty cell".into());
        }
        for &h in &live_h {
            let he = &self.hedges[h as usize];
            for (name, r) in [("twin", he.twin), ("next", he.next), ("prev", he.prev)] {
                if r as usize >= self.hedges.len() || self.hedges[r as usize].origin == INVALID {
                    return Err(format!("hedge {h}: dangling {name}"));
                }
            }
            if self.hedges[he.twin as usize].twin != h {
                return Err(format!("hedge {h}: twin not involutive"));
            }
            if he.twin == h {
                return Err(format!("hedge {h}: self twin"));
            }
            if self.hedges[he.next as usize].prev != h || self.hedges[he.prev as usize].next != h {
                return Err(format!("hedge {h}: next/prev mismatch"));
            }
            if self.hedges[he.next as usize].face != he.face {
                return Err(format!("hedge {h}: next crosses face"));
            }
            // twins run between the same vertices, reversed
            if self.hedges[he.twin as usize].origin != self.dest(h) {
                return Err(format!("hedge {h}: twin origin mismatch"));
            }
            if he.face as usize >= self.faces.len() || self.faces[he.face as usize].hedge == INVALID
            {
                return Err(format!("hedge {h}: dead face"));
            }
        }
        let mut seen_in_loops = 0usize;
        for f in self.face_ids() {
            let mut n = 0;
            for h in self.face_loop(f) {
                if self.hedges[h as usize].face != f {
                    return Err(format!("face {f}: loop leaves face"));
                }
                let v = self.hedges[h as usize].origin;
                if classify_vertex(&self.verts[v as usize].point, &self.faces[f as usize].plane)
                    != Side::On
                {
                    return Err(format!("face {f}: vertex {v} off supporting plane"));
                }
                n += 1;
                if n > self.hedges.len() {
                    return Err(format!("face {f}: unclosed loop"));
                }
            }
            if n < 3 {
                return Err(format!("face {f}: loop of length {n}"));
            }
            seen_in_loops += n;
        }
        if seen_in_loops != live_h.len() {
            return Err("face loops do not cover all half-edges".into());
        }
        for v in self.vertex_ids() {
            let out = self.verts[v as usize].out;
            if out as usize >= self.hedges.len() || self.hedges[out as usize].origin != v {
                return Err(format!("vertex {v}: bad out pointer"));
            }
        }
        let (vc, ec, fc) = (self.vertex_count(), self.edge_count(), self.face_count());
        if vc + fc != ec + 2 {
            return Err(format!("euler violated: V={vc} E={ec} F={fc}"));
        }
        // Strict convexity: across every edge, the neighbor face bends
        // strictly inward, and adjacent supporting planes differ.
        for &h in &live_h {
            let he = &self.hedges[h as usize];
            let fp = &self.faces[he.face as usize].plane;
            let tw = &self.hedges[he.twin as usize];
            let gp = &self.faces[tw.face as usize].plane;
            if fp == gp {
                return Err(format!("coplanar adjacent faces across hedge {h}"));
            }
            // a vertex of the neighbor face that is off the shared edge
            let probe = self.dest(self.hedges[he.twin as usize].next);
            if classify_vertex(&self.verts[probe as usize].point, fp) != Side::Neg {
                return Err(format!("non-convex (or flat) dihedral at hedge {h}"));
            }
        }
        Ok(())
    }

    // ---- internal slot management (used by the cut) ----

    pub(crate) fn alloc_vertex(&mut self, point: HomoPoint<W>) -> u32 {
        if let Some(i) = self.free_verts.pop() {
            self.verts[i as usize] = Vertex { point, out: INVALID };
            i
        } else {
            self.verts.push(Vertex { point, out: INVALID });
            (self.verts.len() - 1) as u32
        }
    }

    pub(crate) fn alloc_hedge(&mut self) -> u32 {
        if let Some(i) = self.free_hedges.pop() {
            i
        } else {
            self.hedges.push(HalfEdge {
                origin: INVALID,
                twin: INVALID,
                next: INVALID,
                prev: INVALID,
                face: INVALID,
            });
            (self.hedges.len() - 1) as u32
        }
    }

    pub(crate) fn alloc_face(&mut self, plane: Plane) -> u32 {
        if let Some(i) = self.free_faces.pop() {
            self.faces[i as usize] = Face {
                plane,
                hedge: INVALID,
                tag: 0,
            };
            i
        } else {
            self.faces.push(Face {
                plane,
                hedge: INVALID,
                tag: 0,
            });
            (self.faces.len() - 1) as u32
        }
    }

    pub(crate) fn free_vertex(&mut self, v: u32) {
        self.verts[v as usize].out = INVALID;
        self.free_verts.push(v);
    }

    pub(crate) fn free_hedge(&mut self, h: u32) {
        self.hedges[h as usize].origin = INVALID;
        self.free_hedges.push(h);
    }

    pub(crate) fn free_face(&mut self, f: u32) {
        self.faces[f as usize].hedge = INVALID;
        self.free_faces.push(f);
    }

    pub(crate) fn hedge_mut(&mut self, h: u32) -> &mut HalfEdge {
        &mut self.hedges[h as usize]
    }

    pub(crate) fn vert_mut(&mut self, v: u32) -> &mut Vertex<W> {
        &mut self.verts[v as usize]
    }

    pub(crate) fn face_mut(&mut self, f: u32) -> &mut Face {
        &mut self.faces[f as usize]
    }

    pub(crate) fn new_empty() -> Self {
        ConvexCell {
            verts: Vec::new(),
            hedges: Vec::new(),
            faces: Vec::new(),
            free_verts: Vec::new(),
            free_hedges: Vec::new(),
            free_faces: Vec::new(),
            cut_hint: 0,
        }
    }

    pub(crate) fn verts_len(&self) -> usize {
        self.verts.len()
    }

    pub(crate) fn faces_len(&self) -> usize {
        self.faces.len()
    }

    pub(crate) fn hedges_len(&self) -> usize {
        self.hedges.len()
    }

    pub(crate) fn cut_hint(&self) -> u32 {
        self.cut_hint
    }

    pub(crate) fn set_cut_hint(&mut self, h: u32) {
        self.cut_hint = h;
    }

    pub(crate) fn first_live_hedge(&self) -> u32 {
        self.hedge_ids().next().expect("cell has no half-edges")
    }

    /// Rough heap footprint of the element arrays, for memory accounting.
    pub fn heap_bytes(&self) -> usize {
        self.verts.capacity() * std::mem::size_of::<Vertex<W>>()
            + self.hedges.capacity() * std::mem::size_of::<HalfEdge>()
            + self.faces.capacity() * std::mem::size_of::<Face>()
    }
}

pub struct FaceLoop<'a, W: Width> {
    cell: &'a ConvexCell<W>,
    start: u32,
    cur: u32,
    done: bool,
}

impl<W: Width> Iterator for FaceLoop<'_, W> {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.done || self.start == INVALID {
            return None;
        }
        let h = self.cur;
        self.cur = self.cell.hedges[h as usize].next;
        if self.cur == self.start {
            self.done = true;
        }
        Some(h)
    }
}

pub struct VertexRing<'a, W: Width> {
    cell: &'a ConvexCell<W>,
    start: u32,
    cur: u32,
    done: bool,
}

impl<W: Width> Iterator for VertexRing<'_, W> {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.done || self.start == INVALID {
            return None;
        }
        let h = self.cur;
        // next outgoing counterclockwise: continue from the twin's next
        let twin = self.cell.hedges[h as usize].twin;
        self.cur = self.cell.hedges[twin as usize].next;
        if self.cur == self.start {
            self.done = true;
        }
        Some(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planes::W256;

    #[test]
    fn box_counts_and_validity() {
        let cell = ConvexCell::<W256>::make_box([0, 0, 0], [4, 4, 4]).unwrap();
        assert_eq!(cell.vertex_count(), 8);
        assert_eq!(cell.edge_count(), 12);
        assert_eq!(cell.face_count(), 6);
        cell.validate().unwrap();
    }

    #[test]
    fn degenerate_box_rejected() {
        assert!(matches!(
            ConvexCell::<W256>::make_box([1, 0, 0], [1, 4, 4]),
            Err(Error::DegenerateBox)
        ));
    }

    #[test]
    fn face_polys_are_consistent() {
        let cell = ConvexCell::<W256>::make_box([0, 0, 0], [2, 2, 2]).unwrap();
        for f in cell.face_ids() {
            let poly = cell.face_poly(f);
            assert_eq!(poly.bounds.len(), 4);
            assert_eq!(poly.corners.len(), 4);
            for (i, c) in poly.corners.iter().enumerate() {
                assert_eq!(classify_vertex(c, &poly.support), Side::On);
                assert_eq!(classify_vertex(c, &poly.bounds[i]), Side::On);
                assert_eq!(
                    classify_vertex(c, &poly.bounds[(i + 1) % poly.bounds.len()]),
                    Side::On
                );
            }
        }
    }

    #[test]
    fn vertex_ring_covers_degree() {
        let cell = ConvexCell::<W256>::make_box([0, 0, 0], [1, 1, 1]).unwrap();
        for v in cell.vertex_ids() {
            let ring: Vec<u32> = cell.vertex_ring(v).collect();
            assert_eq!(ring.len(), 3, "box corners have degree 3");
            for h in ring {
                assert_eq!(cell.hedge(h).origin, v);
            }
        }
    }
}
