//! Plane-based convex polygons and polygon clipping.
//!
//! A polygon is a supporting plane plus an ordered list of boundary planes;
//! corners exist as three-plane intersections and are cached as resolved
//! [`HomoPoint`]s. Splitting against a plane only inserts that plane (or its
//! negation) into the boundary list. No operation ever constructs a new
//! plane, which is what keeps the precision budget closed under clipping.

use crate::error::Error;
use crate::planes::{
    are_planes_parallel, classify_vertex, intersect_3_planes, plane_from_points, HomoPoint, Plane,
    Side, Width,
};

/// Convex polygon: `support` holds the polygon, `bounds[i]` carries the edge
/// from `corners[i-1]` to `corners[i]`, and `corners[i]` lies on `support`,
/// `bounds[i]` and `bounds[i+1]`. The region is the negative side of every
/// boundary plane.
#[derive(Debug, Clone)]
pub struct PlanePoly<W: Width> {
    pub support: Plane,
    pub bounds: Vec<Plane>,
    pub corners: Vec<HomoPoint<W>>,
    /// Opaque caller annotation, carried through splits.
    pub tag: u64,
}

/// Outcome of clipping a polygon against a plane.
#[derive(Debug)]
pub enum PolySplit<W: Width> {
    /// Polygon lies in the clip plane itself; `same_orientation` tells
    /// whether the supports agree or oppose.
    OnPlane { same_orientation: bool },
    /// Entirely on the negative (closed) side; the input is unchanged.
    Neg,
    /// Entirely on the positive (closed) side.
    Pos,
    Split {
        neg: PlanePoly<W>,
        pos: PlanePoly<W>,
    },
}

impl<W: Width> PlanePoly<W> {
    /// A triangle over integer vertices. The three edge planes are spanned
    /// by the edge direction and a coordinate axis, so their coefficients
    /// stay far below the cross-product normal bound.
    pub fn from_triangle(v: [[i64; 3]; 3], tag: u64) -> Result<PlanePoly<W>, Error> {
        let support = plane_from_points(v[0], v[1], v[2])?;
        let mut bounds = Vec::with_capacity(3);
        for i in 0..3 {
            // edge from v[i-1] to v[i] must carry bounds[i]
            let a = v[(i + 2) % 3];
            let b = v[i];
            let opposite = v[(i + 1) % 3];
            bounds.push(edge_plane(a, b, opposite, &support)?);
        }
        let corners = (0..3).map(|i| HomoPoint::from_int_point(v[i])).collect();
        let poly = PlanePoly {
            support,
            bounds,
            corners,
            tag,
        };
        debug_assert!(poly.check().is_ok(), "{:?}", poly.check());
        Ok(poly)
    }

    /// Structural sanity: corners on their three defining planes and inside
    /// all other boundary planes. Collinear corners (valence-2 points) are
    /// accepted as on-boundary.
    pub fn check(&self) -> Result<(), String> {
        let n = self.bounds.len();
        if n < 3 || self.corners.len() != n {
            return Err(format!("polygon with {} bounds, {} corners", n, self.corners.len()));
        }
        for (i, c) in self.corners.iter().enumerate() {
            if classify_vertex(c, &self.support) != Side::On {
                return Err(format!("corner {i} off support"));
            }
            for (j, b) in self.bounds.iter().enumerate() {
                let side = classify_vertex(c, b);
                let incident = j == i || j == (i + 1) % n;
                if incident && side != Side::On {
                    return Err(format!("corner {i} off incident bound {j}"));
                }
                if !incident && side == Side::Pos {
                    return Err(format!("corner {i} outside bound {j}"));
                }
            }
        }
        Ok(())
    }

    /// Clip against `s`. The negative part keeps `s` in its boundary list,
    /// the positive part gets `-s`; both reuse existing corners where the
    /// plane passes through one.
    pub fn split_against(&self, s: &Plane) -> PolySplit<W> {
        if self.support == *s {
            return PolySplit::OnPlane { same_orientation: true };
        }
        if self.support == s.negated() {
            return PolySplit::OnPlane { same_orientation: false };
        }
        let g: Vec<Side> = self.corners.iter().map(|c| classify_vertex(c, s)).collect();
        let any_neg = g.iter().any(|&x| x == Side::Neg);
        let any_pos = g.iter().any(|&x| x == Side::Pos);
        match (any_neg, any_pos) {
            (false, false) => {
                // all corners on s but support differs: degenerate polygon
                debug_assert!(false, "zero-area polygon");
                PolySplit::Neg
            }
            (true, false) => PolySplit::Neg,
            (false, true) => PolySplit::Pos,
            (true, true) => PolySplit::Split {
                neg: self.clip_side(s, &g, Side::Neg),
                pos: self.clip_side(s, &g, Side::Pos),
            },
        }
    }

    /// The piece on the strict side `keep`, assuming both strict sides are
    /// present.
    fn clip_side(&self, s: &Plane, g: &[Side], keep: Side) -> PlanePoly<W> {
        let n = self.corners.len();
        let clip = if keep == Side::Neg { *s } else { s.negated() };
        let start = g
            .iter()
            .position(|&x| x == keep)
            .expect("split side must have a strict corner");
        // Walk backward to the first kept corner; the arc may begin with an
        // on-plane corner, which both pieces share.
        let mut first = start;
        while g[(first + n - 1) % n] == keep {
            first = (first + n - 1) % n;
        }
        let entry_on_corner = g[(first + n - 1) % n] == Side::On;
        if entry_on_corner {
            first = (first + n - 1) % n;
        }
        // Walk forward to the last kept corner, same treatment.
        let mut last = start;
        while g[(last + 1) % n] == keep {
            last = (last + 1) % n;
        }
        let exit_on_corner = g[(last + 1) % n] == Side::On;
        if exit_on_corner {
            last = (last + 1) % n;
        }

        let mut bounds = vec![clip];
        let mut corners = Vec::new();
        if !entry_on_corner {
            // new corner where the clip plane crosses the entry edge
            let x = intersect_3_planes::<W>(&self.support, &self.bounds[first], s)
                .expect("entry edge is transversal to the clip plane");
            corners.push(x);
            bounds.push(self.bounds[first]);
            corners.push(self.corners[first]);
        } else {
            corners.push(self.corners[first]);
        }
        let mut i = first;
        while i != last {
            let j = (i + 1) % n;
            bounds.push(self.bounds[j]);
            corners.push(self.corners[j]);
            i = j;
        }
        if !exit_on_corner {
            // replace the last emitted corner with the exit crossing
            let exit_edge = (last + 1) % n;
            let x = intersect_3_planes::<W>(&self.support, &self.bounds[exit_edge], s)
                .expect("exit edge is transversal to the clip plane");
            bounds.push(self.bounds[exit_edge]);
            corners.push(x);
        }
        debug_assert_eq!(bounds.len(), corners.len());
        let piece = PlanePoly {
            support: self.support,
            bounds,
            corners,
            tag: self.tag,
        };
        debug_assert!(piece.check().is_ok(), "{:?}", piece.check());
        piece
    }
}

/// Plane containing the segment `a -> b`, oriented so `opposite` is strictly
/// negative. Spanned by the edge and a coordinate axis to keep coefficients
/// tiny; also transversal to `support` so corner construction stays valid.
fn edge_plane(a: [i64; 3], b: [i64; 3], opposite: [i64; 3], support: &Plane) -> Result<Plane, Error> {
    let e = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    // try axes by ascending |edge component|: the most orthogonal first
    let mut axes = [0usize, 1, 2];
    axes.sort_by_key(|&i| e[i].unsigned_abs());
    for &axis in &axes {
        let mut unit = [0i64; 3];
        unit[axis] = 1;
        let n = [
            e[1] * unit[2] - e[2] * unit[1],
            e[2] * unit[0] - e[0] * unit[2],
            e[0] * unit[1] - e[1] * unit[0],
        ];
        if n == [0, 0, 0] {
            continue;
        }
        let d = -(n[0] as i128 * a[0] as i128 + n[1] as i128 * a[1] as i128
            + n[2] as i128 * a[2] as i128);
        let p = Plane::new(n[0], n[1], n[2], d);
        if are_planes_parallel(&p, support) {
            continue;
        }
        match p.side_of_int_point(opposite) {
            Side::Neg => return Ok(p),
            Side::Pos => return Ok(p.negated()),
            Side::On => continue,
        }
    }
    Err(Error::CollinearPoints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planes::W192;

    fn square() -> PlanePoly<W192> {
        // unit-ish square in the z=0 plane, CCW from +z
        PlanePoly {
            support: Plane::new(0, 0, 1, 0),
            bounds: vec![
                Plane::new(-1, 0, 0, 0),  // x >= 0 edge (corner[-1]=(0,4) -> corner[0]=(0,0))
                Plane::new(0, -1, 0, 0),  // y >= 0
                Plane::new(1, 0, 0, -4),  // x <= 4
                Plane::new(0, 1, 0, -4),  // y <= 4
            ],
            corners: vec![
                HomoPoint::from_int_point([0, 0, 0]),
                HomoPoint::from_int_point([4, 0, 0]),
                HomoPoint::from_int_point([4, 4, 0]),
                HomoPoint::from_int_point([0, 4, 0]),
            ],
            tag: 7,
        }
    }

    #[test]
    fn square_checks_out() {
        square().check().unwrap();
    }

    #[test]
    fn split_mid_gives_two_rectangles() {
        let sq = square();
        let s = Plane::new(1, 0, 0, -2);
        match sq.split_against(&s) {
            PolySplit::Split { neg, pos } => {
                assert_eq!(neg.corners.len(), 4);
                assert_eq!(pos.corners.len(), 4);
                assert_eq!(neg.tag, 7);
                assert!(neg.bounds.contains(&s));
                assert!(pos.bounds.contains(&s.negated()));
                for c in &neg.corners {
                    assert_ne!(classify_vertex(c, &s), Side::Pos);
                }
                for c in &pos.corners {
                    assert_ne!(classify_vertex(c, &s), Side::Neg);
                }
            }
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn one_sided_and_coplanar_cases() {
        let sq = square();
        assert!(matches!(
            sq.split_against(&Plane::new(1, 0, 0, -100)),
            PolySplit::Neg
        ));
        assert!(matches!(
            sq.split_against(&Plane::new(-1, 0, 0, -100)),
            PolySplit::Pos
        ));
        assert!(matches!(
            sq.split_against(&Plane::new(0, 0, 1, 0)),
            PolySplit::OnPlane { same_orientation: true }
        ));
        assert!(matches!(
            sq.split_against(&Plane::new(0, 0, -1, 0)),
            PolySplit::OnPlane { same_orientation: false }
        ));
        // touching at a corner only: still one-sided
        assert!(matches!(
            sq.split_against(&Plane::new(1, 1, 0, 0)),
            PolySplit::Pos
        ));
    }

    #[test]
    fn split_through_corners_reuses_points() {
        let sq = square();
        let diag = Plane::new(1, -1, 0, 0); // through (0,0) and (4,4)
        match sq.split_against(&diag) {
            PolySplit::Split { neg, pos } => {
                assert_eq!(neg.corners.len(), 3);
                assert_eq!(pos.corners.len(), 3);
                neg.check().unwrap();
                pos.check().unwrap();
            }
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn triangle_construction() {
        let tri =
            PlanePoly::<W192>::from_triangle([[0, 0, 0], [8, 0, 0], [0, 8, 0]], 3).unwrap();
        tri.check().unwrap();
        // corners match the construction exactly
        for (i, v) in [[0i64, 0, 0], [8, 0, 0], [0, 8, 0]].iter().enumerate() {
            assert!(tri.corners[i].projective_eq(&HomoPoint::from_int_point(*v)));
        }
        // degenerate triangle is refused
        assert!(PlanePoly::<W192>::from_triangle([[0, 0, 0], [4, 4, 4], [8, 8, 8]], 0).is_err());
    }
}
