//! Red/green coloring of the orthogonality constraints.
//!
//! A valid coloring puts exactly one Green in every triad and at most one
//! Green in every pair (dyads, plus triads that lost a member to a
//! deletion). The engine propagates forced colors, searches exhaustively,
//! replays the seven-step non-coloring proof, and audits criticality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orthograph::{induced_permutation, is_automorphism, IndexPermutation, OrthoGraph, Rotatable, Rotation, TriadDyadDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Green,
    Red,
    Unassigned,
}

/// Colors of rays `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<Color>,
}

impl Coloring {
    pub fn new(n: usize) -> Self {
        Coloring { colors: vec![Color::Unassigned; n] }
    }

    /// Greens as listed, every other active ray Red.
    pub fn from_greens(cs: &ConstraintSet, greens: &[u8]) -> Self {
        let mut c = Coloring::new(cs.vertex_count());
        for v in cs.active_vertices() {
            c.set(v, if greens.contains(&v) { Color::Green } else { Color::Red });
        }
        c
    }

    pub fn with(mut self, ray: u8, color: Color) -> Self {
        self.set(ray, color);
        self
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, ray: u8) -> Color {
        self.colors[ray as usize - 1]
    }

    pub fn set(&mut self, ray: u8, color: Color) {
        self.colors[ray as usize - 1] = color;
    }

    fn rays_with(&self, color: Color) -> Vec<u8> {
        (1..=self.colors.len() as u8).filter(|&r| self.get(r) == color).collect()
    }

    pub fn greens(&self) -> Vec<u8> {
        self.rays_with(Color::Green)
    }

    pub fn reds(&self) -> Vec<u8> {
        self.rays_with(Color::Red)
    }

    pub fn unassigned(&self) -> Vec<u8> {
        self.rays_with(Color::Unassigned)
    }
}

/// Reference to a constraint by its position in a [`ConstraintSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintRef {
    Triad(usize),
    Pair(usize),
}

/// Exactly-one-Green triads and at-most-one-Green pairs over rays `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSet {
    n: usize,
    deleted: Vec<u8>,
    triads: Vec<[u8; 3]>,
    pairs: Vec<[u8; 2]>,
}

impl ConstraintSet {
    pub fn new(n: usize, triads: Vec<[u8; 3]>, pairs: Vec<[u8; 2]>) -> Self {
        ConstraintSet { n, deleted: Vec::new(), triads, pairs }
    }

    pub fn from_decomposition(n: usize, d: &TriadDyadDecomposition) -> Self {
        ConstraintSet::new(n, d.triads.clone(), d.dyads.clone())
    }

    /// Removes `ray`; each triad through it becomes a pair over its survivors.
    pub fn delete(&self, ray: u8) -> Result<Self> {
        if ray == 0 || ray as usize > self.n {
            return Err(Error::IndexOutOfRange(ray as usize));
        }
        let keep: Vec<u8> = self.active_vertices().filter(|&v| v != ray).collect();
        Ok(self.restrict(&keep))
    }

    /// Keeps only the listed rays. Triads with two survivors become pairs;
    /// anything with fewer is dropped.
    pub fn restrict(&self, keep: &[u8]) -> Self {
        let kept: BTreeSet<u8> = keep.iter().copied().filter(|v| self.is_active(*v)).collect();
        let mut triads = Vec::new();
        let mut pairs = Vec::new();
        for t in &self.triads {
            let survivors: Vec<u8> = t.iter().copied().filter(|v| kept.contains(v)).collect();
            match survivors.len() {
                3 => triads.push(*t),
                2 => pairs.push([survivors[0], survivors[1]]),
                _ => {}
            }
        }
        for p in &self.pairs {
            if kept.contains(&p[0]) && kept.contains(&p[1]) {
                pairs.push(*p);
            }
        }
        let deleted = (1..=self.n as u8).filter(|v| !kept.contains(v)).collect();
        ConstraintSet { n: self.n, deleted, triads, pairs }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn deleted(&self) -> &[u8] {
        &self.deleted
    }

    pub fn is_active(&self, ray: u8) -> bool {
        ray >= 1 && ray as usize <= self.n && !self.deleted.contains(&ray)
    }

    pub fn active_vertices(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=self.n as u8).filter(move |&v| self.is_active(v))
    }

    pub fn triads(&self) -> &[[u8; 3]] {
        &self.triads
    }

    pub fn pairs(&self) -> &[[u8; 2]] {
        &self.pairs
    }

    pub fn members(&self, c: ConstraintRef) -> &[u8] {
        match c {
            ConstraintRef::Triad(i) => &self.triads[i],
            ConstraintRef::Pair(i) => &self.pairs[i],
        }
    }

    fn triad_ref(&self, t: [u8; 3]) -> Option<usize> {
        let mut t = t;
        t.sort_unstable();
        self.triads.iter().position(|x| {
            let mut x = *x;
            x.sort_unstable();
            x == t
        })
    }

    /// Constraints through each ray, triads first, each in list order.
    fn membership(&self) -> Vec<Vec<ConstraintRef>> {
        let mut m = vec![Vec::new(); self.n + 1];
        for (i, t) in self.triads.iter().enumerate() {
            for &v in t {
                m[v as usize].push(ConstraintRef::Triad(i));
            }
        }
        for (i, p) in self.pairs.iter().enumerate() {
            for &v in p {
                m[v as usize].push(ConstraintRef::Pair(i));
            }
        }
        m
    }
}

/// Why a partial coloring cannot be extended.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Contradiction {
    TriadAllRed { constraint: ConstraintRef, rays: Vec<u8> },
    TwoGreens { constraint: ConstraintRef, rays: Vec<u8> },
}

impl Contradiction {
    pub fn rays(&self) -> &[u8] {
        match self {
            Contradiction::TriadAllRed { rays, .. } | Contradiction::TwoGreens { rays, .. } => rays,
        }
    }
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contradiction::TriadAllRed { rays, .. } => write!(f, "triad {rays:?} is all red"),
            Contradiction::TwoGreens { rays, .. } => write!(f, "constraint {rays:?} holds two greens"),
        }
    }
}

/// One step of a proof trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    Choice { greens: Vec<u8>, symmetry: String },
    Forced { ray: u8, color: Color, reason: ConstraintRef },
    Contradiction { witness: Contradiction },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub steps: Vec<Step>,
}

impl ProofTrace {
    pub fn choice_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Choice { .. })).count()
    }

    /// Every ray colored Green by the trace.
    pub fn green_set(&self) -> BTreeSet<u8> {
        let mut out = BTreeSet::new();
        for s in &self.steps {
            match s {
                Step::Choice { greens, .. } => out.extend(greens.iter().copied()),
                Step::Forced { ray, color: Color::Green, .. } => {
                    out.insert(*ray);
                }
                _ => {}
            }
        }
        out
    }

    pub fn contradiction(&self) -> Option<&Contradiction> {
        match self.steps.last() {
            Some(Step::Contradiction { witness }) => Some(witness),
            _ => None,
        }
    }

    /// Re-derives every step from the single constraint it cites.
    pub fn verify(&self, cs: &ConstraintSet) -> Result<()> {
        let mut c = Coloring::new(cs.vertex_count());
        let fail = |step: usize, reason: String| Err(Error::ReplayDivergence { step, reason });
        for (i, s) in self.steps.iter().enumerate() {
            match s {
                Step::Choice { greens, .. } => {
                    for &g in greens {
                        if !cs.is_active(g) || c.get(g) != Color::Unassigned {
                            return fail(i, format!("choice of ray {g} is not free"));
                        }
                        c.set(g, Color::Green);
                    }
                }
                Step::Forced { ray, color, reason } => {
                    if c.get(*ray) != Color::Unassigned {
                        return fail(i, format!("ray {ray} already colored"));
                    }
                    let members = cs.members(*reason);
                    if !members.contains(ray) {
                        return fail(i, format!("ray {ray} not in cited constraint"));
                    }
                    let others: Vec<Color> = members.iter().filter(|&&m| m != *ray).map(|&m| c.get(m)).collect();
                    let entailed = match (color, reason) {
                        (Color::Red, _) => others.contains(&Color::Green),
                        (Color::Green, ConstraintRef::Triad(_)) => others.iter().all(|&o| o == Color::Red),
                        _ => false,
                    };
                    if !entailed {
                        return fail(i, format!("ray {ray} {color:?} not entailed by {members:?}"));
                    }
                    c.set(*ray, *color);
                }
                Step::Contradiction { witness } => {
                    if i + 1 != self.steps.len() {
                        return fail(i, "contradiction is not the final step".into());
                    }
                    let members = cs.members(match witness {
                        Contradiction::TriadAllRed { constraint, .. } | Contradiction::TwoGreens { constraint, .. } => {
                            *constraint
                        }
                    });
                    let colors: Vec<Color> = members.iter().map(|&m| c.get(m)).collect();
                    let holds = match witness {
                        Contradiction::TriadAllRed { constraint: ConstraintRef::Triad(_), .. } => {
                            colors.iter().all(|&x| x == Color::Red)
                        }
                        Contradiction::TwoGreens { .. } => colors.iter().filter(|&&x| x == Color::Green).count() >= 2,
                        _ => false,
                    };
                    if !holds || witness.rays() != members {
                        return fail(i, format!("contradiction {witness} does not hold"));
                    }
                }
            }
        }
        if self.contradiction().is_none() {
            return fail(self.steps.len(), "trace does not end in a contradiction".into());
        }
        Ok(())
    }
}

struct Propagator<'a> {
    cs: &'a ConstraintSet,
    membership: Vec<Vec<ConstraintRef>>,
    coloring: Coloring,
    trace: Vec<Step>,
}

impl<'a> Propagator<'a> {
    fn new(cs: &'a ConstraintSet, coloring: Coloring) -> Self {
        Propagator { cs, membership: cs.membership(), coloring, trace: Vec::new() }
    }

    /// Rule (i): every constraint-mate of a Green ray is Red.
    fn spread_green(&mut self, g: u8) -> std::result::Result<(), Contradiction> {
        for &cref in &self.membership[g as usize] {
            for &m in self.cs.members(cref) {
                if m == g {
                    continue;
                }
                match self.coloring.get(m) {
                    Color::Green => {
                        return Err(Contradiction::TwoGreens { constraint: cref, rays: self.cs.members(cref).to_vec() })
                    }
                    Color::Unassigned => {
                        self.coloring.set(m, Color::Red);
                        self.trace.push(Step::Forced { ray: m, color: Color::Red, reason: cref });
                    }
                    Color::Red => {}
                }
            }
        }
        Ok(())
    }

    fn all_red_triad(&self) -> Option<Contradiction> {
        self.cs.triads.iter().enumerate().find_map(|(i, t)| {
            t.iter().all(|&v| self.coloring.get(v) == Color::Red).then(|| Contradiction::TriadAllRed {
                constraint: ConstraintRef::Triad(i),
                rays: t.to_vec(),
            })
        })
    }

    /// Rule (ii) candidate: a triad with two Reds and one free ray.
    fn forced_green(&self) -> Option<(u8, usize)> {
        self.cs.triads.iter().enumerate().find_map(|(i, t)| {
            let reds = t.iter().filter(|&&v| self.coloring.get(v) == Color::Red).count();
            let free: Vec<u8> = t.iter().copied().filter(|&v| self.coloring.get(v) == Color::Unassigned).collect();
            (reds == 2 && free.len() == 1).then(|| (free[0], i))
        })
    }

    /// Runs both rules to a fixpoint. Greens already present are spread
    /// first, in ascending order; after the queue drains, all-Red triads are
    /// checked before the first forcible triad (in list order) is applied.
    fn run(&mut self, mut queue: Vec<u8>) -> std::result::Result<(), Contradiction> {
        loop {
            for g in std::mem::take(&mut queue) {
                self.spread_green(g)?;
            }
            if let Some(c) = self.all_red_triad() {
                return Err(c);
            }
            match self.forced_green() {
                Some((ray, t)) => {
                    self.coloring.set(ray, Color::Green);
                    self.trace.push(Step::Forced { ray, color: Color::Green, reason: ConstraintRef::Triad(t) });
                    queue.push(ray);
                }
                None => return Ok(()),
            }
        }
    }
}

/// Fixpoint of the forcing rules, or the first contradiction reached.
pub fn propagate(c: &Coloring, cs: &ConstraintSet) -> std::result::Result<Coloring, Contradiction> {
    propagate_traced(c, cs).0
}

/// [`propagate`] together with the forced steps taken.
pub fn propagate_traced(
    c: &Coloring,
    cs: &ConstraintSet,
) -> (std::result::Result<Coloring, Contradiction>, Vec<Step>) {
    let mut p = Propagator::new(cs, c.clone());
    let result = p.run(c.greens());
    let trace = std::mem::take(&mut p.trace);
    (result.map(|()| p.coloring), trace)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub coloring: Option<Coloring>,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

/// Complete backtracking search with propagation at every node. Branches on
/// the Green-free triad with the fewest undetermined members.
pub fn search_coloring(cs: &ConstraintSet) -> SearchOutcome {
    let mut nodes = 0;
    let coloring = search_node(cs, Coloring::new(cs.vertex_count()), &mut nodes);
    SearchOutcome { coloring, nodes }
}

fn search_node(cs: &ConstraintSet, c: Coloring, nodes: &mut u64) -> Option<Coloring> {
    *nodes += 1;
    let mut c = propagate(&c, cs).ok()?;
    let branch = cs
        .triads
        .iter()
        .filter(|t| t.iter().all(|&v| c.get(v) != Color::Green))
        .map(|t| t.iter().copied().filter(|&v| c.get(v) == Color::Unassigned).collect::<Vec<u8>>())
        .min_by_key(Vec::len);
    match branch {
        Some(free) => free.into_iter().find_map(|v| search_node(cs, c.clone().with(v, Color::Green), nodes)),
        None => {
            // Every triad has its Green; Red everywhere else is safe.
            for v in cs.active_vertices() {
                if c.get(v) == Color::Unassigned {
                    c.set(v, Color::Red);
                }
            }
            Some(c)
        }
    }
}

/// Validity of a complete coloring, using only the definition.
pub fn check_coloring(c: &Coloring, cs: &ConstraintSet) -> std::result::Result<(), String> {
    if c.len() != cs.vertex_count() {
        return Err(format!("coloring covers {} rays, expected {}", c.len(), cs.vertex_count()));
    }
    for v in cs.active_vertices() {
        if c.get(v) == Color::Unassigned {
            return Err(format!("ray {v} is uncolored"));
        }
    }
    for t in &cs.triads {
        let g = t.iter().filter(|&&v| c.get(v) == Color::Green).count();
        if g != 1 {
            return Err(format!("triad {t:?} has {g} greens"));
        }
    }
    for p in &cs.pairs {
        if p.iter().all(|&v| c.get(v) == Color::Green) {
            return Err(format!("pair {p:?} has two greens"));
        }
    }
    Ok(())
}

/// Forced red set after choosing ray 1 Green.
pub const FIRST_STEP_REDS: [u8; 8] = [2, 3, 4, 5, 26, 33, 29, 30];
/// Second-step alternatives other than the pair (10, 11).
pub const SECOND_STEP_ALTERNATIVES: [[u8; 2]; 3] = [[10, 12], [13, 12], [11, 13]];
/// Triads of the seven-step proof after the two choices, in order; the
/// first four each force one Green and the last ends all Red.
pub const REPLAY_ROWS: [[u8; 3]; 5] = [[2, 25, 31], [3, 24, 27], [3, 23, 28], [6, 14, 17], [7, 15, 16]];

/// Mechanically replays the seven-step non-coloring proof.
pub fn replay_proof(cs: &ConstraintSet) -> Result<ProofTrace> {
    let mut p = Propagator::new(cs, Coloring::new(cs.vertex_count()));
    let diverge = |p: &Propagator, reason: String| Error::ReplayDivergence { step: p.trace.len(), reason };

    let choose = |p: &mut Propagator, greens: &[u8], symmetry: &str| -> Result<()> {
        for &g in greens {
            if !cs.is_active(g) || p.coloring.get(g) != Color::Unassigned {
                return Err(diverge(p, format!("ray {g} is not free to choose")));
            }
            p.coloring.set(g, Color::Green);
        }
        p.trace.push(Step::Choice { greens: greens.to_vec(), symmetry: symmetry.into() });
        for &g in greens {
            p.spread_green(g).map_err(|c| diverge(p, format!("choice {greens:?} contradicts: {c}")))?;
        }
        Ok(())
    };

    choose(&mut p, &[1], "120-degree rotation about (1,1,1) maps rays 2 and 3 to 1")?;
    let reds: BTreeSet<u8> = p.coloring.reds().into_iter().collect();
    if reds != FIRST_STEP_REDS.into_iter().collect() {
        return Err(diverge(&p, format!("green 1 forced reds {reds:?}")));
    }
    if p.coloring.get(4) != Color::Red || p.coloring.get(5) != Color::Red {
        return Err(diverge(&p, "rays 4 and 5 are not red before the second choice".into()));
    }
    choose(&mut p, &[10, 11], "90/180/270-degree rotation about x maps the other pairs to (10,11)")?;

    let (last, forcing) = REPLAY_ROWS.split_last().expect("rows");
    for row in forcing {
        let t = cs.triad_ref(*row).ok_or_else(|| diverge(&p, format!("{row:?} is not a triad")))?;
        let free: Vec<u8> = row.iter().copied().filter(|&v| p.coloring.get(v) == Color::Unassigned).collect();
        let reds = row.iter().filter(|&&v| p.coloring.get(v) == Color::Red).count();
        if reds != 2 || free.len() != 1 {
            return Err(diverge(&p, format!("triad {row:?} does not force a green")));
        }
        p.coloring.set(free[0], Color::Green);
        p.trace.push(Step::Forced { ray: free[0], color: Color::Green, reason: ConstraintRef::Triad(t) });
        p.spread_green(free[0]).map_err(|c| diverge(&p, format!("unexpected contradiction {c}")))?;
    }
    let t = cs.triad_ref(*last).ok_or_else(|| diverge(&p, format!("{last:?} is not a triad")))?;
    if !last.iter().all(|&v| p.coloring.get(v) == Color::Red) {
        return Err(diverge(&p, format!("final triad {last:?} is not all red")));
    }
    let witness = Contradiction::TriadAllRed { constraint: ConstraintRef::Triad(t), rays: cs.triads[t].to_vec() };
    p.trace.push(Step::Contradiction { witness });
    Ok(ProofTrace { steps: p.trace })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationCheck {
    pub name: String,
    pub permutation: IndexPermutation,
    pub automorphism: bool,
    pub fixes_ray_1: bool,
    pub preserves_red_set: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternativeCheck {
    pub pair: [u8; 2],
    /// Quarter turns about x of the first rotation that fixes ray 1,
    /// keeps the Red set, and maps the pair onto {10, 11}.
    pub quarter_turns: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub rotation_111: RotationCheck,
    pub cycles_first_triad: bool,
    pub x_rotations: Vec<RotationCheck>,
    pub alternatives: Vec<AlternativeCheck>,
}

impl SymmetryReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in std::iter::once(&self.rotation_111).chain(&self.x_rotations) {
            if !r.automorphism {
                out.push(format!("{} is not an automorphism", r.name));
            }
        }
        if !self.cycles_first_triad {
            out.push("rotation about (1,1,1) does not cycle rays 1, 2, 3".into());
        }
        for a in &self.alternatives {
            if a.quarter_turns.is_none() {
                out.push(format!("no x rotation maps {:?} onto (10,11)", a.pair));
            }
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

fn rotation_check<T: Rotatable>(name: &str, r: &Rotation, catalog: &[T], g: &OrthoGraph) -> Result<RotationCheck> {
    let permutation = induced_permutation(r, catalog)?;
    Ok(RotationCheck {
        name: name.into(),
        automorphism: is_automorphism(&permutation, g),
        fixes_ray_1: permutation.apply(1) == 1,
        preserves_red_set: permutation.maps_set_onto(&FIRST_STEP_REDS, &FIRST_STEP_REDS),
        permutation,
    })
}

/// Checks that the two symmetry reductions of the replayed proof are sound.
pub fn verify_symmetry_reduction<T: Rotatable>(catalog: &[T], g: &OrthoGraph) -> Result<SymmetryReport> {
    let rotation_111 = rotation_check("rotation 120 about (1,1,1)", &Rotation::about_111(), catalog, g)?;
    let p = &rotation_111.permutation;
    let cycles_first_triad = p.apply(1) == 2 && p.apply(2) == 3 && p.apply(3) == 1;
    let x_rotations = (1..=3)
        .map(|q| rotation_check(&format!("rotation {} about x", 90 * q), &Rotation::about_x(q), catalog, g))
        .collect::<Result<Vec<_>>>()?;
    let alternatives = SECOND_STEP_ALTERNATIVES
        .iter()
        .map(|pair| AlternativeCheck {
            pair: *pair,
            quarter_turns: x_rotations
                .iter()
                .zip(1u32..)
                .find(|(r, _)| r.fixes_ray_1 && r.preserves_red_set && r.permutation.maps_set_onto(pair, &[10, 11]))
                .map(|(_, q)| q),
        })
        .collect();
    Ok(SymmetryReport { rotation_111, cycles_first_triad, x_rotations, alternatives })
}

/// Valid coloring for every single-ray deletion, each re-validated.
pub fn criticality_audit(cs: &ConstraintSet) -> Result<BTreeMap<u8, Coloring>> {
    let rays: Vec<u8> = cs.active_vertices().collect();
    rays.par_iter()
        .map(|&v| {
            let reduced = cs.delete(v)?;
            let c = search_coloring(&reduced).coloring.ok_or(Error::NotColorable(v))?;
            check_coloring(&c, &reduced).map_err(|_| Error::NotColorable(v))?;
            Ok((v, c))
        })
        .collect()
}

/// Greens of a known valid coloring after deleting ray 1.
pub const RAY1_DELETION_GREENS: [u8; 9] = [2, 4, 8, 12, 14, 16, 19, 23, 27];
