//! Strategies on the hardness-reduction graphs, built from a certificate
//! (an exact cover or a perfect 3D matching).

use super::table::{compile, row, Binder, Blueprint, Row};
use super::{DefenseStrategy, StrategyError};
use crate::graph::{Graph, VertexMask};
use crate::reductions::{reduce_3dm, reduce_x3c, ThreeDMInstance, ThreeDMLayout, X3CInstance, X3CLayout, GADGET_ROLES};

fn mask_of(vs: impl IntoIterator<Item = usize>) -> VertexMask {
    vs.into_iter().fold(0, |m, v| m | 1 << v)
}

/// Least neighbour of `v` inside `target`.
fn least_in(g: &Graph, v: usize, target: VertexMask) -> Option<usize> {
    g.neighbors(v).iter().copied().find(|&c| target >> c & 1 == 1)
}

const X3C_FAMILIES: &[(&str, &str)] = &[
    ("S1", "cover triples and u, plus one guard on v or w"),
    ("S2", "cover triples and u, plus one guard on another triple vertex or an element vertex"),
];

const X3C_ROWS: &[Row] = &[
    row("S1", "x_i", "c_xi->x_i, u->c_xi, β->u"),
    row(
        "S2",
        "x_i",
        "c_xi->x_i, c*->c_xi : c_xi->x_i, c_x*->c_xi, x*->c_x* : c_xi->x_i, x*->c_xi",
    ),
    row("S1", "c_k", "u->c_k, β->u"),
    row("S2", "c_k", "c*->c_k : c_x*->c_k, x*->c_x*"),
    row("S1", "v(w)", "u->v(w), w(v)->u"),
    row("S2", "v(w)", "u->v(w), c*->u : u->v(w), c_x*->u, x*->c_x*"),
];

struct X3CBinder<'a> {
    g: &'a Graph,
    lay: X3CLayout,
    /// Cover triple vertices and `u`.
    star: VertexMask,
    cover: VertexMask,
}

impl X3CBinder<'_> {
    fn extra(&self, cfg: VertexMask) -> Option<usize> {
        let extra = cfg & !self.star;
        (cfg & self.star == self.star && extra.count_ones() == 1).then(|| extra.trailing_zeros() as usize)
    }
    fn is_element(&self, v: usize) -> bool {
        (self.lay.x(0)..self.lay.u()).contains(&v)
    }
    fn anchor(&self, x: usize) -> Option<usize> {
        self.is_element(x).then(|| least_in(self.g, x, self.cover)).flatten()
    }
}

impl Binder for X3CBinder<'_> {
    fn family(&self, cfg: VertexMask) -> Option<&'static str> {
        let d = self.extra(cfg)?;
        Some(if d == self.lay.v() || d == self.lay.w() { "S1" } else { "S2" })
    }

    fn attack_class(&self, _: VertexMask, _: &str, r: usize) -> Option<&'static str> {
        if self.is_element(r) {
            Some("x_i")
        } else if r < self.lay.m {
            Some("c_k")
        } else if r == self.lay.v() || r == self.lay.w() {
            Some("v(w)")
        } else {
            None
        }
    }

    fn bind(&self, cfg: VertexMask, family: &str, r: usize, symbol: &str) -> Option<usize> {
        let (v, w) = (self.lay.v(), self.lay.w());
        let delta = self.extra(cfg)?;
        match symbol {
            "x_i" | "c_k" | "v(w)" => Some(r),
            "w(v)" => Some(if r == v { w } else { v }),
            "u" => Some(self.lay.u()),
            "β" => (family == "S1").then_some(delta),
            "c_xi" => self.anchor(r),
            "c*" => (family == "S2" && delta < self.lay.m).then_some(delta),
            "x*" => self.is_element(delta).then_some(delta),
            "c_x*" => self.anchor(delta),
            _ => None,
        }
    }
}

/// Strategy with `q + 2` guards on the X3C reduction graph from an exact
/// cover (triple indices).
pub fn strategy_x3c(inst: &X3CInstance, cover: &[usize]) -> Result<(Graph, DefenseStrategy), StrategyError> {
    let built = reduce_x3c(inst)?;
    if !inst.is_exact_cover(cover) {
        return Err(StrategyError::NotExactCover);
    }
    let lay = inst.layout();
    let g = built.graph;
    let cover_mask = mask_of(cover.iter().map(|&i| lay.c(i)));
    let mut invariant: Vec<usize> = cover.iter().map(|&i| lay.c(i)).collect();
    invariant.push(lay.u());
    invariant.sort_unstable();
    let mut initial = invariant.clone();
    initial.push(lay.w());
    let binder = X3CBinder { g: &g, lay, star: mask_of(invariant.iter().copied()), cover: cover_mask };
    let bp = Blueprint { k: inst.q + 2, initial, invariant, families: X3C_FAMILIES, rows: X3C_ROWS };
    let s = compile(&g, &bp, &binder)?;
    Ok((g, s))
}

const TDM_FAMILIES: &[(&str, &str)] = &[
    ("D1", "a, b, c of the matched gadgets, u, d and e of the other gadgets, and one guard on v or w"),
    (
        "D2",
        "as D1 but the extra guard sits on an element vertex, an interior vertex of a matched gadget, \
         or a, b, c of an unmatched gadget",
    ),
    (
        "D3",
        "a, b, c of the matched gadgets, u, d and e of all unmatched gadgets but one, which holds \
         {f, c, e}, {g, b, e}, {h, b, d} or {i, a, d}",
    ),
];

const TDM_ROWS: &[Row] = &[
    row("D1", "v(w)", "u->v(w), w(v)->u"),
    row("D1", "ε*", "u->ε*, β->u"),
    row("D1", "θ*", "z_θ*->θ*, u->z_θ*, β->u"),
    row("D1", "f_i", "d_i->f_i, u->c_i, β->u"),
    row("D1", "g_i", "d_i->g_i, u->b_i, β->u"),
    row("D1", "h_i", "e_i->h_i, u->b_i, β->u"),
    row("D1", "i_i", "e_i->i_i, u->a_i, β->u"),
    row("D2", "v(w)", "u->v(w), x_st->u, s_t->x_st : u->v(w), z_θ->u, θ->z_θ : u->v(w), ε->u"),
    row("D2", "ε*", "x_st->ε*, s_t->x_st : z_θ->ε*, θ->z_θ : ε->ε*"),
    row("D2", "θ*", "z_θ*->θ*, x_st->z_θ*, s_t->x_st : z_θ*->θ*, z_θ->z_θ*, θ->z_θ : z_θ*->θ*, ε->z_θ*"),
    row("D2", "f_i", "d_i->f_i, x_st->c_i, s_t->x_st : d_i->f_i, z_θ->c_i, θ->z_θ : d_i->f_i, ε->c_i"),
    row("D2", "g_i", "d_i->g_i, x_st->b_i, s_t->x_st : d_i->g_i, z_θ->b_i, θ->z_θ : d_i->g_i, ε->b_i"),
    row("D2", "h_i", "e_i->h_i, x_st->b_i, s_t->x_st : e_i->h_i, z_θ->b_i, θ->z_θ : e_i->h_i, ε->b_i"),
    row("D2", "i_i", "e_i->i_i, x_st->a_i, s_t->x_st : e_i->i_i, z_θ->a_i, θ->z_θ : e_i->i_i, ε->a_i"),
    row(
        "D3",
        "v(w)",
        "u->v(w), c_i->u, f_i->d_i : u->v(w), b_i->u, g_i->d_i : u->v(w), b_i->u, h_i->e_i \
         : u->v(w), a_i->u, i_i->e_i",
    ),
    row("D3", "ε*", "c_i->ε*, f_i->d_i : b_i->ε*, g_i->d_i : b_i->ε*, h_i->e_i : a_i->ε*, i_i->e_i"),
    row(
        "D3",
        "θ*",
        "z_θ*->θ*, c_i->z_θ*, f_i->d_i : z_θ*->θ*, b_i->z_θ*, g_i->d_i : z_θ*->θ*, b_i->z_θ*, h_i->e_i \
         : z_θ*->θ*, a_i->z_θ*, i_i->e_i",
    ),
    row("D3", "d_i", "f_i->d_i, u->β, c_i->u : g_i->d_i, u->β, b_i->u"),
    row("D3", "e_i", "h_i->e_i, u->β, b_i->u : i_i->e_i, u->β, a_i->u"),
    // The `_j` alternatives answer an attack inside another unmatched gadget
    // j: j takes the matching pattern and gadget i returns to {d, e}.
    row(
        "D3",
        "f_i",
        "b_i->f_i, g_i->c_i : b_i->f_i, d_i->c_i, h_i->e_i : d_i->f_i, a_i->c_i, i_i->e_i \
         : d_j->f_j, c_i->c_j, f_i->d_i : d_j->f_j, b_i->c_j, g_i->d_i : d_j->f_j, b_i->c_j, h_i->e_i \
         : d_j->f_j, a_i->c_j, i_i->e_i",
    ),
    row(
        "D3",
        "g_i",
        "c_i->g_i, f_i->b_i : d_i->g_i, h_i->e_i : d_i->g_i, i_i->b_i, a_i->e_i \
         : d_j->g_j, c_i->b_j, f_i->d_i : d_j->g_j, b_i->b_j, g_i->d_i : d_j->g_j, b_i->b_j, h_i->e_i \
         : d_j->g_j, a_i->b_j, i_i->e_i",
    ),
    row(
        "D3",
        "h_i",
        "e_i->h_i, f_i->b_i, c_i->d_i : e_i->h_i, g_i->d_i : a_i->h_i, i_i->b_i \
         : e_j->h_j, c_i->b_j, f_i->d_i : e_j->h_j, b_i->b_j, g_i->d_i : e_j->h_j, b_i->b_j, h_i->e_i \
         : e_j->h_j, a_i->b_j, i_i->e_i",
    ),
    row(
        "D3",
        "i_i",
        "e_i->i_i, f_i->a_i, c_i->d_i : e_i->i_i, b_i->a_i, g_i->d_i : b_i->i_i, h_i->a_i \
         : e_j->i_j, c_i->a_j, f_i->d_i : e_j->i_j, b_i->a_j, g_i->d_i : e_j->i_j, b_i->a_j, h_i->e_i \
         : e_j->i_j, a_i->a_j, i_i->e_i",
    ),
];

const D3_PATTERNS: [[char; 3]; 4] = [['f', 'c', 'e'], ['g', 'b', 'e'], ['h', 'b', 'd'], ['i', 'a', 'd']];

struct TdmBinder<'a> {
    g: &'a Graph,
    lay: ThreeDMLayout,
    matched: Vec<bool>,
    /// a, b, c of the matched gadgets, and `u`.
    core: VertexMask,
    /// `core` plus d, e of every unmatched gadget.
    base: VertexMask,
    /// a, b, c of the matched gadgets.
    anchors: VertexMask,
}

enum Shape {
    /// The extra guard.
    Extra(usize),
    /// The unmatched gadget holding a pattern.
    Pattern(usize),
}

impl TdmBinder<'_> {
    fn gadget_mask(&self, i: usize) -> VertexMask {
        mask_of((0..9).map(|r| 9 * i + r))
    }

    fn shape(&self, cfg: VertexMask) -> Option<Shape> {
        if cfg & self.base == self.base {
            let extra = cfg & !self.base;
            return (extra.count_ones() == 1).then(|| Shape::Extra(extra.trailing_zeros() as usize));
        }
        if cfg & self.core != self.core {
            return None;
        }
        let mut broken = (0..self.lay.p).filter(|&i| {
            !self.matched[i] && {
                let (d, e) = (self.lay.gadget(i, 'd'), self.lay.gadget(i, 'e'));
                cfg >> d & 1 == 0 || cfg >> e & 1 == 0
            }
        });
        let i = broken.next()?;
        if broken.next().is_some() {
            return None;
        }
        let held = cfg & self.gadget_mask(i);
        let fits = D3_PATTERNS.iter().any(|pat| held == mask_of(pat.iter().map(|&r| self.lay.gadget(i, r))));
        let de = mask_of(['d', 'e'].map(|r| self.lay.gadget(i, r)));
        (fits && cfg == (self.base & !de) | held).then_some(Shape::Pattern(i))
    }

    fn is_hub(&self, v: usize) -> bool {
        matches!(self.lay.gadget_of(v), Some((_, 'a' | 'b' | 'c')))
    }

    /// Element vertices and interiors of matched gadgets.
    fn is_theta(&self, v: usize) -> bool {
        self.lay.is_element(v) || matches!(self.lay.gadget_of(v), Some((i, r)) if self.matched[i] && !"abc".contains(r))
    }

    fn anchor(&self, v: usize) -> Option<usize> {
        self.is_theta(v).then(|| least_in(self.g, v, self.anchors)).flatten()
    }

    fn pattern_gadget(&self, cfg: VertexMask) -> Option<usize> {
        match self.shape(cfg)? {
            Shape::Pattern(i) => Some(i),
            Shape::Extra(_) => None,
        }
    }

    fn extra(&self, cfg: VertexMask) -> Option<usize> {
        match self.shape(cfg)? {
            Shape::Extra(d) => Some(d),
            Shape::Pattern(_) => None,
        }
    }
}

impl Binder for TdmBinder<'_> {
    fn family(&self, cfg: VertexMask) -> Option<&'static str> {
        Some(match self.shape(cfg)? {
            Shape::Extra(d) if d == self.lay.v() || d == self.lay.w() => "D1",
            Shape::Extra(_) => "D2",
            Shape::Pattern(_) => "D3",
        })
    }

    fn attack_class(&self, _: VertexMask, _: &str, r: usize) -> Option<&'static str> {
        if r == self.lay.v() || r == self.lay.w() {
            return Some("v(w)");
        }
        if self.is_theta(r) {
            return Some("θ*");
        }
        match self.lay.gadget_of(r)? {
            (_, 'a' | 'b' | 'c') => Some("ε*"),
            (_, 'd') => Some("d_i"),
            (_, 'e') => Some("e_i"),
            (_, 'f') => Some("f_i"),
            (_, 'g') => Some("g_i"),
            (_, 'h') => Some("h_i"),
            (_, 'i') => Some("i_i"),
            _ => None,
        }
    }

    fn bind(&self, cfg: VertexMask, family: &str, r: usize, symbol: &str) -> Option<usize> {
        let (v, w) = (self.lay.v(), self.lay.w());
        match symbol {
            "v(w)" | "ε*" | "θ*" => return Some(r),
            "w(v)" => return Some(if r == v { w } else { v }),
            "u" => return Some(self.lay.u()),
            "β" => return if family == "D3" { Some(v) } else { self.extra(cfg).filter(|&d| d == v || d == w) },
            "z_θ*" => return self.anchor(r),
            _ => {}
        }
        if family == "D2" {
            let d = self.extra(cfg)?;
            let is_elem = self.lay.is_element(d);
            match symbol {
                "s_t" => return is_elem.then_some(d),
                "x_st" => return if is_elem { self.anchor(d) } else { None },
                "θ" => return (!is_elem && self.is_theta(d)).then_some(d),
                "z_θ" => return if !is_elem && self.is_theta(d) { self.anchor(d) } else { None },
                "ε" => return self.is_hub(d).then_some(d),
                _ => {}
            }
        }
        let mut chars = symbol.chars();
        let (role, sep, which) = (chars.next()?, chars.next()?, chars.next()?);
        if sep != '_' || chars.next().is_some() || !GADGET_ROLES.contains(&role) {
            return None;
        }
        let attacked = self.lay.gadget_of(r).map(|(i, _)| i);
        let gadget = match (which, family) {
            ('i', "D3") => self.pattern_gadget(cfg)?,
            ('i', _) => attacked?,
            ('j', "D3") => attacked.filter(|&j| Some(j) != self.pattern_gadget(cfg))?,
            _ => return None,
        };
        Some(self.lay.gadget(gadget, role))
    }
}

/// Strategy with `2p + q + 2` guards on the 3DM reduction graph from a
/// perfect matching (triple indices).
pub fn strategy_3dm(inst: &ThreeDMInstance, matching: &[usize]) -> Result<(Graph, DefenseStrategy), StrategyError> {
    let (built, _) = reduce_3dm(inst)?;
    if !inst.is_perfect_matching(matching) {
        return Err(StrategyError::NotPerfectMatching);
    }
    let lay = inst.layout();
    let g = built.graph;
    let mut matched = vec![false; lay.p];
    matching.iter().for_each(|&i| matched[i] = true);
    let anchors = mask_of(matching.iter().flat_map(|&i| ['a', 'b', 'c'].map(|r| lay.gadget(i, r))));
    let core = anchors | 1 << lay.u();
    let base = core
        | mask_of((0..lay.p).filter(|&i| !matched[i]).flat_map(|i| ['d', 'e'].map(|r| lay.gadget(i, r))));
    let invariant = crate::graph::mask_members(core);
    let mut initial = crate::graph::mask_members(base);
    initial.push(lay.v());
    let binder = TdmBinder { g: &g, lay, matched, core, base, anchors };
    let bp = Blueprint {
        k: 2 * lay.p + inst.q + 2,
        initial,
        invariant,
        families: TDM_FAMILIES,
        rows: TDM_ROWS,
    };
    let s = compile(&g, &bp, &binder)?;
    Ok((g, s))
}
