//! In-place plane cutting of a convex cell: edge descent to find the cut
//! cross-section, a read-only trace of the section loop, then surgery that
//! touches only the section neighborhood plus the separated part.
//!
//! The negative side stays in the cell; the positive side is returned as a
//! new cell built from copied elements. A cut that would leave either side
//! with zero volume changes nothing and reports [`CutOutcome::NotProper`].

use std::cmp::Ordering;
use std::collections::HashMap;

use super::{ConvexCell, INVALID};
use crate::planes::{
    classify_vertex, compare_abs_distance, intersect_3_planes, HomoPoint, Plane, Side, Width,
};

#[derive(Debug, Default, Clone)]
pub struct CutCounters {
    pub cuts: u64,
    pub proper_cuts: u64,
    /// Unique vertex classifications (cache misses); the quantity that must
    /// scale sublinearly with cell size.
    pub classify_calls: u64,
    pub vertex_constructions: u64,
}

/// Reusable per-cut scratch: a stamped classification cache plus counters.
#[derive(Debug, Default)]
pub struct CutScratch {
    stamp: Vec<u32>,
    side: Vec<Side>,
    face_stamp: Vec<u32>,
    current: u32,
    pub counters: CutCounters,
}

impl CutScratch {
    pub fn new() -> Self {
        Self::default()
    }

    fn begin(&mut self, verts: usize, faces: usize) {
        self.current = self.current.wrapping_add(1);
        if self.current == 0 {
            self.stamp.fill(u32::MAX - 1);
            self.face_stamp.fill(u32::MAX - 1);
            self.current = 1;
        }
        let stale = self.current.wrapping_sub(1);
        if self.stamp.len() < verts {
            self.stamp.resize(verts, stale);
            self.side.resize(verts, Side::On);
        }
        if self.face_stamp.len() < faces {
            self.face_stamp.resize(faces, stale);
        }
    }
}

#[derive(Debug)]
pub enum CutOutcome<W: Width> {
    /// The cell was split; it keeps the negative side and `positive` is the
    /// rest. `cap_neg` / `cap_pos` are the new cap faces (supporting plane
    /// `s` resp. `-s`), tags left 0 for the caller.
    Split {
        positive: ConvexCell<W>,
        cap_neg: u32,
        cap_pos: u32,
    },
    /// No proper intersection; the cell is unchanged and lies entirely on
    /// the reported strict side of the plane.
    NotProper(Side),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NodeKind {
    /// Transversally crossed edge, as the half-edge it was discovered on.
    Cross { hedge: u32 },
    /// Existing vertex exactly on the cut plane.
    OnVert { v: u32 },
}

/// Location of a section transition within a specific face loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Position {
    /// The straddling half-edge itself.
    OnEdge(u32),
    /// The half-edge of this face whose origin is the on-plane vertex.
    AtVertex(u32),
}

#[derive(Debug, Clone, Copy)]
enum Seg {
    /// The section crosses the interior of face `f`, entering at `entry`
    /// and leaving at `exit`; `sigma` is the strict side of the arc the
    /// scan walked (from entry, counterclockwise).
    Face {
        f: u32,
        entry: Position,
        exit: Position,
        sigma: Side,
    },
    /// The section runs along an existing edge in the plane; `hedge` points
    /// from the seg's start node to its end node and `hedge_side` is the
    /// strict side of `face(hedge)`.
    Edge { hedge: u32, hedge_side: Side },
}

enum Descent {
    Cross(u32),
    OnVert(u32),
    NoIntersection(Side),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Candidate {
    AlongEdge(u32),
    ThroughFace { f: u32, at: u32 },
}

struct Trace {
    nodes: Vec<NodeKind>,
    segs: Vec<Seg>,
    saw_pos: bool,
    saw_neg: bool,
}

impl Trace {
    fn note(&mut self, side: Side) {
        match side {
            Side::Pos => self.saw_pos = true,
            Side::Neg => self.saw_neg = true,
            Side::On => {}
        }
    }
}

impl<W: Width> ConvexCell<W> {
    /// Cut the cell against a plane. See [`CutOutcome`].
    pub fn cut(&mut self, s: &Plane, cx: &mut CutScratch) -> CutOutcome<W> {
        cx.begin(self.verts_len(), self.faces_len());
        cx.counters.cuts += 1;
        let found = match self.descend(s, cx) {
            Descent::NoIntersection(side) => return CutOutcome::NotProper(side),
            other => other,
        };
        let trace = match self.trace_section(s, cx, found) {
            Some(t) if t.saw_pos && t.saw_neg => t,
            Some(t) => {
                // closed loop with a single-signed neighborhood: the plane
                // only touches a face, edge or vertex
                let side = if t.saw_pos { Side::Pos } else { Side::Neg };
                return CutOutcome::NotProper(side);
            }
            None => {
                let side = self
                    .strict_side_of(s)
                    .expect("3D cell must have strict vertices");
                return CutOutcome::NotProper(side);
            }
        };
        cx.counters.proper_cuts += 1;
        self.apply_cut(s, cx, &trace)
    }

    fn cls(&self, v: u32, s: &Plane, cx: &mut CutScratch) -> Side {
        let i = v as usize;
        if cx.stamp[i] == cx.current {
            return cx.side[i];
        }
        let side = classify_vertex(self.point(v), s);
        cx.counters.classify_calls += 1;
        cx.stamp[i] = cx.current;
        cx.side[i] = side;
        side
    }

    /// Greedy walk towards the plane, always moving to the strictly closest
    /// neighbor. On a convex cell any local minimum is global, so failing to
    /// find a closer neighbor proves there is no proper intersection.
    fn descend(&self, s: &Plane, cx: &mut CutScratch) -> Descent {
        let hint = self.cut_hint();
        let start_h = if (hint as usize) < self.hedges_len() && self.hedge(hint).origin != INVALID
        {
            hint
        } else {
            self.first_live_hedge()
        };
        let mut v = self.hedge(start_h).origin;
        let mut cv = self.cls(v, s, cx);
        if cv == Side::On {
            return Descent::OnVert(v);
        }
        loop {
            let mut best: Option<u32> = None;
            for h in self.vertex_ring(v) {
                let u = self.dest(h);
                let cu = self.cls(u, s, cx);
                if cu == Side::On {
                    return Descent::OnVert(u);
                }
                if cu != cv {
                    return Descent::Cross(h);
                }
                let champ = best.unwrap_or(v);
                match compare_abs_distance(self.point(u), self.point(champ), s) {
                    Ordering::Less => best = Some(u),
                    Ordering::Equal => {
                        if let Some(b) = best {
                            if u < b {
                                best = Some(u);
                            }
                        }
                    }
                    Ordering::Greater => {}
                }
            }
            match best {
                Some(u) => v = u,
                None => return Descent::NoIntersection(cv),
            }
        }
    }

    /// Walk the closed section loop read-only. `None` means a degenerate
    /// contact (no proper intersection).
    fn trace_section(&self, s: &Plane, cx: &mut CutScratch, start: Descent) -> Option<Trace> {
        let mut tr = Trace {
            nodes: Vec::new(),
            segs: Vec::new(),
            saw_pos: false,
            saw_neg: false,
        };
        let (start_node, mut seg, mut next_node) = match start {
            Descent::Cross(h) => {
                let o = self.cls(self.hedge(h).origin, s, cx);
                let d = self.cls(self.dest(h), s, cx);
                tr.note(o);
                tr.note(d);
                let node = NodeKind::Cross { hedge: h };
                let (seg, next) =
                    self.scan_face(s, cx, self.hedge(h).face, Position::OnEdge(h), &mut tr)?;
                (node, seg, next)
            }
            Descent::OnVert(v) => {
                let node = NodeKind::OnVert { v };
                let cands = self.candidates_at(s, cx, v, &mut tr);
                if cands.len() != 2 {
                    return None;
                }
                let (seg, next) = self.follow_candidate(s, cx, cands[0], &mut tr)?;
                (node, seg, next)
            }
            Descent::NoIntersection(_) => unreachable!(),
        };
        let start_key = self.node_key(start_node);
        tr.nodes.push(start_node);
        let guard = self.hedges_len() * 2 + 8;
        for _ in 0..guard {
            tr.segs.push(seg);
            if self.node_key(next_node) == start_key {
                return Some(tr);
            }
            tr.nodes.push(next_node);
            let incoming = self.incoming_identity(seg);
            let (nseg, nnode) = match next_node {
                NodeKind::Cross { hedge } => {
                    let t = self.hedge(hedge).twin;
                    self.scan_face(s, cx, self.hedge(t).face, Position::OnEdge(t), &mut tr)?
                }
                NodeKind::OnVert { v } => {
                    let cands = self.candidates_at(s, cx, v, &mut tr);
                    if cands.len() != 2 {
                        return None;
                    }
                    let pick = cands
                        .into_iter()
                        .find(|c| self.candidate_identity(*c) != incoming)
                        .expect("section must continue past an on-plane vertex");
                    self.follow_candidate(s, cx, pick, &mut tr)?
                }
            };
            seg = nseg;
            next_node = nnode;
        }
        panic!("section trace failed to close");
    }

    fn node_key(&self, n: NodeKind) -> (u8, u32) {
        match n {
            NodeKind::Cross { hedge } => (0, hedge.min(self.hedge(hedge).twin)),
            NodeKind::OnVert { v } => (1, v),
        }
    }

    fn candidate_identity(&self, c: Candidate) -> (u8, u32) {
        match c {
            Candidate::AlongEdge(h) => (0, h.min(self.hedge(h).twin)),
            Candidate::ThroughFace { f, .. } => (1, f),
        }
    }

    fn incoming_identity(&self, seg: Seg) -> (u8, u32) {
        match seg {
            Seg::Edge { hedge, .. } => (0, hedge.min(self.hedge(hedge).twin)),
            Seg::Face { f, .. } => (1, f),
        }
    }

    /// Scan face `f` from an entry transition to the exit transition,
    /// classifying only the vertices along the way.
    fn scan_face(
        &self,
        s: &Plane,
        cx: &mut CutScratch,
        f: u32,
        entry: Position,
        tr: &mut Trace,
    ) -> Option<(Seg, NodeKind)> {
        let (mut p, mut prev_strict) = match entry {
            Position::OnEdge(h) => {
                debug_assert_eq!(self.hedge(h).face, f);
                let d = self.cls(self.dest(h), s, cx);
                (self.hedge(h).next, Some(d))
            }
            Position::AtVertex(hv) => {
                debug_assert_eq!(self.hedge(hv).face, f);
                (hv, None)
            }
        };
        let mut sigma = prev_strict;
        let mut steps = 0usize;
        loop {
            let u = self.dest(p);
            let cu = self.cls(u, s, cx);
            tr.note(cu);
            match cu {
                Side::On => {
                    let sig = sigma.expect("crossed face exits immediately after entering");
                    let exit = Position::AtVertex(self.hedge(p).next);
                    let seg = Seg::Face { f, entry, exit, sigma: sig };
                    return Some((seg, NodeKind::OnVert { v: u }));
                }
                strict => {
                    if sigma.is_none() {
                        sigma = Some(strict);
                    }
                    if let Some(ps) = prev_strict {
                        if ps != strict {
                            let seg = Seg::Face {
                                f,
                                entry,
                                exit: Position::OnEdge(p),
                                sigma: sigma.unwrap(),
                            };
                            return Some((seg, NodeKind::Cross { hedge: p }));
                        }
                    }
                    prev_strict = Some(strict);
                    p = self.hedge(p).next;
                }
            }
            steps += 1;
            if steps > self.hedges_len() {
                panic!("face scan failed to find an exit transition");
            }
        }
    }

    /// Section continuations at an on-plane vertex: incident edges lying in
    /// the plane and incident faces properly crossed by it.
    fn candidates_at(
        &self,
        s: &Plane,
        cx: &mut CutScratch,
        v: u32,
        tr: &mut Trace,
    ) -> Vec<Candidate> {
        let mut cands = Vec::new();
        for h in self.vertex_ring(v) {
            let u = self.dest(h);
            let cu = self.cls(u, s, cx);
            tr.note(cu);
            if cu == Side::On {
                cands.push(Candidate::AlongEdge(h));
            }
            let f = self.hedge(h).face;
            let (mut pos, mut neg) = (false, false);
            for e in self.face_loop(f) {
                let c = self.cls(self.hedge(e).origin, s, cx);
                tr.note(c);
                match c {
                    Side::Pos => pos = true,
                    Side::Neg => neg = true,
                    Side::On => {}
                }
            }
            if pos && neg {
                cands.push(Candidate::ThroughFace { f, at: h });
            }
        }
        cands
    }

    fn follow_candidate(
        &self,
        s: &Plane,
        cx: &mut CutScratch,
        c: Candidate,
        tr: &mut Trace,
    ) -> Option<(Seg, NodeKind)> {
        match c {
            Candidate::AlongEdge(h) => {
                // any vertex of face(h) off the in-plane edge is strict
                let probe = self.dest(self.hedge(h).next);
                let side = self.cls(probe, s, cx);
                tr.note(side);
                debug_assert!(side != Side::On);
                let seg = Seg::Edge { hedge: h, hedge_side: side };
                Some((seg, NodeKind::OnVert { v: self.dest(h) }))
            }
            Candidate::ThroughFace { f, at } => {
                self.scan_face(s, cx, f, Position::AtVertex(at), tr)
            }
        }
    }

    // ---- surgery ----

    fn apply_cut(&mut self, s: &Plane, cx: &mut CutScratch, tr: &Trace) -> CutOutcome<W> {
        let n = tr.nodes.len();

        // Cut vertices: constructed for crossed edges, reused for on-plane
        // vertices. The positive duplicates go straight into the new cell.
        let mut neg_v = vec![INVALID; n];
        let mut cut_point: Vec<Option<HomoPoint<W>>> = vec![None; n];
        for (i, node) in tr.nodes.iter().enumerate() {
            match *node {
                NodeKind::Cross { hedge } => {
                    let p1 = self.face(self.hedge(hedge).face).plane;
                    let p2 = self.face(self.hedge(self.hedge(hedge).twin).face).plane;
                    let x = intersect_3_planes::<W>(&p1, &p2, s)
                        .expect("crossed edge is transversal to the cut plane");
                    cx.counters.vertex_constructions += 1;
                    cut_point[i] = Some(x);
                    neg_v[i] = self.alloc_vertex(x);
                }
                NodeKind::OnVert { v } => {
                    cut_point[i] = Some(*self.point(v));
                    neg_v[i] = v;
                }
            }
        }

        // Positive-side flood, stopped at the section by pre-stamping the
        // crossed faces. No classification happens here.
        for seg in &tr.segs {
            if let Seg::Face { f, .. } = seg {
                cx.face_stamp[*f as usize] = cx.current;
            }
        }
        let mut pos_arcs: Vec<Vec<u32>> = Vec::with_capacity(tr.segs.len());
        let mut moved_hedges: Vec<u32> = Vec::new();
        let mut moved_faces: Vec<u32> = Vec::new();
        let mut queue: Vec<u32> = Vec::new();
        for seg in &tr.segs {
            match *seg {
                Seg::Face { entry, exit, sigma, .. } => {
                    let (from, to) = if sigma == Side::Pos { (entry, exit) } else { (exit, entry) };
                    let arc = self.arc_hedges(from, to);
                    for &h in &arc {
                        queue.push(self.hedge(h).twin);
                    }
                    moved_hedges.extend_from_slice(&arc);
                    pos_arcs.push(arc);
                }
                Seg::Edge { hedge, hedge_side } => {
                    let pos_h = if hedge_side == Side::Pos {
                        hedge
                    } else {
                        self.hedge(hedge).twin
                    };
                    queue.push(pos_h);
                    pos_arcs.push(Vec::new());
                }
            }
        }
        while let Some(h) = queue.pop() {
            let f = self.hedge(h).face;
            if cx.face_stamp[f as usize] == cx.current {
                continue;
            }
            cx.face_stamp[f as usize] = cx.current;
            moved_faces.push(f);
            for e in self.face_loop(f) {
                moved_hedges.push(e);
                queue.push(self.hedge(e).twin);
            }
        }

        // ---- pass 1: build the positive cell (self is read-only here) ----
        let mut pos = ConvexCell::<W>::new_empty();
        let mut vmap: HashMap<u32, u32> = HashMap::new();
        let mut pos_nv = vec![INVALID; n];
        for (i, node) in tr.nodes.iter().enumerate() {
            let pv = pos.alloc_vertex(cut_point[i].unwrap());
            pos_nv[i] = pv;
            if let NodeKind::OnVert { v } = *node {
                vmap.insert(v, pv);
            }
        }
        let mut moved_verts: Vec<u32> = Vec::new();
        for &h in &moved_hedges {
            let o = self.hedge(h).origin;
            if let std::collections::hash_map::Entry::Vacant(e) = vmap.entry(o) {
                e.insert(pos.alloc_vertex(*self.point(o)));
                moved_verts.push(o);
            }
        }
        let mut hmap: HashMap<u32, u32> = HashMap::with_capacity(moved_hedges.len() * 2);
        for &h in &moved_hedges {
            hmap.insert(h, pos.alloc_hedge());
        }
        for &h in &moved_hedges {
            let he = *self.hedge(h);
            let nh = hmap[&h];
            let origin = vmap[&he.origin];
            {
                let copy = pos.hedge_mut(nh);
                copy.origin = origin;
                copy.twin = *hmap.get(&he.twin).unwrap_or(&INVALID);
                copy.next = *hmap.get(&he.next).unwrap_or(&INVALID);
                copy.prev = *hmap.get(&he.prev).unwrap_or(&INVALID);
                copy.face = INVALID;
            }
            pos.vert_mut(origin).out = nh;
        }
        for &f in &moved_faces {
            let nf = pos.alloc_face(self.face(f).plane);
            pos.face_mut(nf).tag = self.face(f).tag;
            let hedge = hmap[&self.face(f).hedge];
            pos.face_mut(nf).hedge = hedge;
            for h in self.face_loop(f) {
                pos.hedge_mut(hmap[&h]).face = nf;
            }
        }

        let cap_pos_f = pos.alloc_face(s.negated());
        let mut cap_pos_hedges: Vec<(u32, u32, u32)> = Vec::new(); // (hedge, origin, dest)
        let mut pos_sub_out = vec![INVALID; n];
        let mut pos_sub_in = vec![INVALID; n];
        // Per-seg data the negative pass needs, captured before mutation.
        let mut neg_plans: Vec<Option<NegPlan>> = Vec::with_capacity(tr.segs.len());

        for (i, seg) in tr.segs.iter().enumerate() {
            let j = (i + 1) % n; // seg runs nodes[i] -> nodes[j]
            match *seg {
                Seg::Face { f, entry, exit, sigma } => {
                    let (neg_s, neg_e, pos_s, pos_e) = if sigma == Side::Neg {
                        ((entry, i), (exit, j), (exit, j), (entry, i))
                    } else {
                        ((exit, j), (entry, i), (entry, i), (exit, j))
                    };
                    let pf = pos.alloc_face(self.face(f).plane);
                    pos.face_mut(pf).tag = self.face(f).tag;
                    let mut loop_p: Vec<u32> = Vec::new();
                    if let Position::OnEdge(_) = pos_s.0 {
                        let sub = pos.alloc_hedge();
                        pos.hedge_mut(sub).origin = pos_nv[pos_s.1];
                        pos.vert_mut(pos_nv[pos_s.1]).out = sub;
                        pos_sub_out[pos_s.1] = sub;
                        loop_p.push(sub);
                    }
                    loop_p.extend(pos_arcs[i].iter().map(|h| hmap[h]));
                    if let Position::OnEdge(h) = pos_e.0 {
                        let sub = pos.alloc_hedge();
                        // the strict-side endpoint of the exit edge
                        let strict_end = self.hedge(h).origin;
                        pos.hedge_mut(sub).origin = vmap[&strict_end];
                        pos_sub_in[pos_e.1] = sub;
                        loop_p.push(sub);
                    }
                    let chord_p = pos.alloc_hedge();
                    pos.hedge_mut(chord_p).origin = pos_nv[pos_e.1];
                    pos.vert_mut(pos_nv[pos_e.1]).out = chord_p;
                    loop_p.push(chord_p);
                    pos.wire_loop(&loop_p, pf);
                    pos.face_mut(pf).hedge = chord_p;
                    let cp = pos.alloc_hedge();
                    pos.hedge_mut(cp).origin = pos_nv[pos_s.1];
                    pos.hedge_mut(cp).twin = chord_p;
                    pos.hedge_mut(chord_p).twin = cp;
                    cap_pos_hedges.push((cp, pos_nv[pos_s.1], pos_nv[pos_e.1]));

                    neg_plans.push(Some(NegPlan::Face {
                        f,
                        neg_s,
                        neg_e,
                    }));
                }
                Seg::Edge { hedge, hedge_side } => {
                    let (keep, moved) = if hedge_side == Side::Neg {
                        (hedge, self.hedge(hedge).twin)
                    } else {
                        (self.hedge(hedge).twin, hedge)
                    };
                    let pm = hmap[&moved];
                    let cp = pos.alloc_hedge();
                    let mo = pos.hedge(pm).origin;
                    let md = vmap[&self.dest(moved)];
                    pos.hedge_mut(cp).origin = md;
                    pos.hedge_mut(cp).twin = pm;
                    pos.hedge_mut(pm).twin = cp;
                    cap_pos_hedges.push((cp, md, mo));

                    neg_plans.push(Some(NegPlan::Edge { keep }));
                }
            }
        }
        for i in 0..n {
            if pos_sub_out[i] != INVALID || pos_sub_in[i] != INVALID {
                debug_assert!(
                    pos_sub_out[i] != INVALID && pos_sub_in[i] != INVALID,
                    "cross node must produce both positive sub-edges"
                );
                pos.hedge_mut(pos_sub_out[i]).twin = pos_sub_in[i];
                pos.hedge_mut(pos_sub_in[i]).twin = pos_sub_out[i];
            }
        }
        pos.chain_cap(cap_pos_f, &cap_pos_hedges);

        // ---- pass 2: negative-side surgery in place ----
        let cap_neg = self.alloc_face(*s);
        let mut cap_neg_hedges: Vec<(u32, u32, u32)> = Vec::new();
        for plan in neg_plans.into_iter().flatten() {
            match plan {
                NegPlan::Face { f, neg_s, neg_e } => {
                    let mut loop_n: Vec<u32> = Vec::new();
                    if let Position::OnEdge(h) = neg_s.0 {
                        // sub-edge from the cut vertex towards the arc
                        self.hedge_mut(h).origin = neg_v[neg_s.1];
                        loop_n.push(h);
                    }
                    loop_n.extend(self.arc_hedges(neg_s.0, neg_e.0));
                    if let Position::OnEdge(h) = neg_e.0 {
                        // sub-edge from the arc end into the cut vertex
                        loop_n.push(h);
                    }
                    let chord_n = self.alloc_hedge();
                    self.hedge_mut(chord_n).origin = neg_v[neg_e.1];
                    loop_n.push(chord_n);
                    self.wire_loop(&loop_n, f);
                    self.face_mut(f).hedge = chord_n;
                    let cn = self.alloc_hedge();
                    self.hedge_mut(cn).origin = neg_v[neg_s.1];
                    self.hedge_mut(cn).twin = chord_n;
                    self.hedge_mut(chord_n).twin = cn;
                    cap_neg_hedges.push((cn, neg_v[neg_s.1], neg_v[neg_e.1]));
                }
                NegPlan::Edge { keep } => {
                    let cn = self.alloc_hedge();
                    let (ko, kd) = (self.hedge(keep).origin, self.dest(keep));
                    self.hedge_mut(cn).origin = kd;
                    self.hedge_mut(cn).twin = keep;
                    self.hedge_mut(keep).twin = cn;
                    cap_neg_hedges.push((cn, kd, ko));
                }
            }
        }
        self.chain_cap(cap_neg, &cap_neg_hedges);

        // Drop the departed elements.
        for &h in &moved_hedges {
            self.free_hedge(h);
        }
        for &f in &moved_faces {
            self.free_face(f);
        }
        for &v in &moved_verts {
            self.free_vertex(v);
        }

        let hint = self.face(cap_neg).hedge;
        self.set_cut_hint(hint);
        let pos_hint = pos.face(cap_pos_f).hedge;
        pos.set_cut_hint(pos_hint);

        CutOutcome::Split {
            positive: pos,
            cap_neg,
            cap_pos: cap_pos_f,
        }
    }

    /// Half-edges strictly inside the arc between two transitions: walking
    /// `next` from just after `from` up to (excluding) `to`.
    fn arc_hedges(&self, from: Position, to: Position) -> Vec<u32> {
        let start = match from {
            Position::OnEdge(h) => self.hedge(h).next,
            Position::AtVertex(hv) => hv,
        };
        let stop = match to {
            Position::OnEdge(h) => h,
            Position::AtVertex(hv) => hv,
        };
        let mut out = Vec::new();
        let mut p = start;
        while p != stop {
            out.push(p);
            p = self.hedge(p).next;
            debug_assert!(out.len() <= self.hedges_len());
        }
        out
    }

    /// Write next/prev/face pointers around an ordered loop.
    fn wire_loop(&mut self, loop_hedges: &[u32], face: u32) {
        let m = loop_hedges.len();
        for i in 0..m {
            let h = loop_hedges[i];
            let nxt = loop_hedges[(i + 1) % m];
            let e = self.hedge_mut(h);
            e.next = nxt;
            e.face = face;
            self.hedge_mut(nxt).prev = h;
        }
    }

    fn chain_cap(&mut self, cap_face: u32, hedges: &[(u32, u32, u32)]) {
        debug_assert!(!hedges.is_empty());
        let by_origin: HashMap<u32, u32> = hedges.iter().map(|&(h, o, _)| (o, h)).collect();
        debug_assert_eq!(by_origin.len(), hedges.len(), "cap loop must be simple");
        for &(h, _, d) in hedges {
            let nxt = by_origin[&d];
            self.hedge_mut(h).next = nxt;
            self.hedge_mut(nxt).prev = h;
            self.hedge_mut(h).face = cap_face;
            let o = self.hedge(h).origin;
            self.vert_mut(o).out = h;
        }
        self.face_mut(cap_face).hedge = hedges[0].0;
    }
}

enum NegPlan {
    Face {
        f: u32,
        neg_s: (Position, usize),
        neg_e: (Position, usize),
    },
    Edge {
        keep: u32,
    },
}
