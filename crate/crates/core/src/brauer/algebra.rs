//! The cyclotomic Brauer algebra on the dotted-diagram normal form.
//!
//! A normal monomial is `X^α D X^β` for an undotted Brauer diagram `D`,
//! where every strand carries fewer than `a` dots at one canonical end:
//! the left endpoint of a top arc (recorded in `top`), the bottom end of a
//! through strand, or the left endpoint of a bottom arc (both in `bottom`).
//!
//! Products are computed through the right action of single letters on
//! normal monomials. Every rewriting step is one of the defining relations,
//! and each correction term carries strictly fewer dots, which bounds the
//! recursion.

use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

use num_traits::One;

use super::diagram::{Diagram, End, Letter};
use super::omega::admissible_omega;
use crate::error::{input, Error, Result};
use crate::hecke::char_poly;
use crate::lincomb::LinComb;
use crate::linalg::SVec;
use crate::rational::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerMonomial {
    pub diagram: Diagram,
    /// Dots at top positions (only on left endpoints of top arcs).
    pub top: Vec<u8>,
    /// Dots at bottom positions (through strands and left endpoints of bottom arcs).
    pub bottom: Vec<u8>,
}

pub type BrauerElement = LinComb<BrauerMonomial>;

/// A linear combination of words that vanishes in the algebra.
#[derive(Clone, Debug)]
pub struct Relator {
    pub name: String,
    pub terms: Vec<(Q, Vec<Letter>)>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Task {
    Act(BrauerMonomial, Letter),
    Bubble(usize, usize),
    Power(usize),
}

pub struct BrauerAlgebra {
    a: usize,
    r: usize,
    u: Vec<Q>,
    omega: Vec<Q>,
    poly: Vec<Q>,
    basis: Vec<BrauerMonomial>,
    index: HashMap<BrauerMonomial, usize>,
    act_cache: Mutex<HashMap<(BrauerMonomial, Letter), BrauerElement>>,
    bubble_cache: Mutex<HashMap<(usize, usize), BrauerElement>>,
    power_cache: Mutex<HashMap<usize, BrauerElement>>,
    active: Mutex<HashSet<Task>>,
}

/// Order of the ω table computed from u.
pub fn omega_order(a: usize, r: usize) -> usize {
    a + 2 * r + 2
}

/// Dimension a^r (2r−1)!! of the algebra with admissible parameters.
pub fn generic_dimension(a: usize, r: usize) -> usize {
    let df: usize = (1..r).map(|k| 2 * k + 1).product();
    a.pow(r as u32) * df
}

fn x_letters(j: usize, n: usize) -> impl Iterator<Item = Letter> {
    std::iter::repeat(Letter::X(j)).take(n)
}

fn sign(neg: bool) -> Q {
    if neg {
        -Q::one()
    } else {
        Q::one()
    }
}

fn sign_pow(neg: bool, k: usize) -> Q {
    sign(neg && k % 2 == 1)
}

/// Moves one dot along its strand through `word`, starting at `start` and
/// ending at the other end of the strand. Returns the end reached, whether
/// the main term picked up a sign, and the correction words (each with the
/// travelling dot removed) created when the dot crossed an S letter.
pub(crate) fn slide(word: &[Letter], start: End) -> (End, bool, Vec<(Q, Vec<Letter>)>) {
    let n = word.len();
    let (mut pos, mut up, mut col) = match start {
        End::Bottom(c) => (n, true, c),
        End::Top(c) => (0, false, c),
    };
    let mut neg = false;
    let mut corr = Vec::new();
    let replaced = |idx: usize, by: Option<Letter>| -> Vec<Letter> {
        let mut w = Vec::with_capacity(n);
        w.extend_from_slice(&word[..idx]);
        w.extend(by);
        w.extend_from_slice(&word[idx + 1..]);
        w
    };
    loop {
        if up && pos == 0 {
            return (End::Top(col), neg, corr);
        }
        if !up && pos == n {
            return (End::Bottom(col), neg, corr);
        }
        let idx = if up { pos - 1 } else { pos };
        match word[idx] {
            Letter::S(l) if col == l || col == l + 1 => {
                // S_l X_l = X_{l+1} S_l + E_l − 1 and S_l X_{l+1} = X_l S_l − E_l + 1,
                // and the mirror images X_l S_l = S_l X_{l+1} + E_l − 1,
                // X_{l+1} S_l = S_l X_l − E_l + 1.
                let mut c = if col == l { q(1) } else { q(-1) };
                if neg {
                    c = -c;
                }
                corr.push((c.clone(), replaced(idx, Some(Letter::E(l)))));
                corr.push((-c, replaced(idx, None)));
                col = if col == l { l + 1 } else { l };
                pos = if up { idx } else { idx + 1 };
            }
            Letter::E(l) if col == l || col == l + 1 => {
                // E_l (X_l + X_{l+1}) = 0 = (X_l + X_{l+1}) E_l: the dot turns round.
                col = if col == l { l + 1 } else { l };
                neg = !neg;
                up = !up;
            }
            _ => pos = if up { idx } else { idx + 1 },
        }
    }
}

/// Moves `k` dots from `start` to the other end of their strand.
/// Residual dots in the correction words are written as X letters.
pub(crate) fn slide_many(
    word: &[Letter],
    start: End,
    k: usize,
) -> (End, bool, Vec<(Q, Vec<Letter>)>) {
    let (end, neg, single) = slide(word, start);
    let mut corr = Vec::new();
    let col = |e: End| match e {
        End::Top(c) | End::Bottom(c) => c,
    };
    let (c0, e) = (col(start), col(end));
    for m in 0..k {
        let scale = sign_pow(neg, m);
        for (c, w) in &single {
            let mut out = Vec::new();
            match (start, end) {
                (End::Bottom(_), End::Top(_)) => {
                    out.extend(x_letters(e, m));
                    out.extend_from_slice(w);
                    out.extend(x_letters(c0, k - 1 - m));
                }
                (End::Bottom(_), End::Bottom(_)) => {
                    out.extend_from_slice(w);
                    out.extend(x_letters(c0, k - 1 - m));
                    out.extend(x_letters(e, m));
                }
                (End::Top(_), End::Bottom(_)) => {
                    out.extend(x_letters(c0, k - 1 - m));
                    out.extend_from_slice(w);
                    out.extend(x_letters(e, m));
                }
                (End::Top(_), End::Top(_)) => {
                    out.extend(x_letters(c0, k - 1 - m));
                    out.extend(x_letters(e, m));
                    out.extend_from_slice(w);
                }
            }
            corr.push((c * &scale, out));
        }
    }
    (end, neg, corr)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Middle {
    S,
    E,
    One,
}

/// `X_i^p X_{i+1}^q S_i = Σ c · X_i^{l0} X_{i+1}^{l1} · M · X_i^{r0} X_{i+1}^{r1}`.
fn expand_dots_through_s(p: usize, q: usize) -> Vec<((usize, usize), Middle, (usize, usize), i64)> {
    if p == 0 && q == 0 {
        return vec![((0, 0), Middle::S, (0, 0), 1)];
    }
    let mut out = Vec::new();
    if q > 0 {
        // X_{i+1} S_i = S_i X_i − E_i + 1
        for (l, m, (r0, r1), c) in expand_dots_through_s(p, q - 1) {
            out.push((l, m, (r0 + 1, r1), c));
        }
        out.push(((p, q - 1), Middle::E, (0, 0), -1));
        out.push(((p, q - 1), Middle::One, (0, 0), 1));
    } else {
        // X_i S_i = S_i X_{i+1} + E_i − 1
        for (l, m, (r0, r1), c) in expand_dots_through_s(p - 1, 0) {
            out.push((l, m, (r0, r1 + 1), c));
        }
        out.push(((p - 1, 0), Middle::E, (0, 0), 1));
        out.push(((p - 1, 0), Middle::One, (0, 0), -1));
    }
    out
}

impl BrauerAlgebra {
    /// The algebra with ω determined by u through the admissibility identity.
    pub fn new(a: usize, r: usize, u: Vec<Q>) -> Result<Self> {
        let omega = admissible_omega(&u, omega_order(a, r));
        Self::with_omega(a, r, u, omega)
    }

    /// The algebra presented with an arbitrary ω table (used for controls).
    pub fn with_omega(a: usize, r: usize, u: Vec<Q>, omega: Vec<Q>) -> Result<Self> {
        if a == 0 || r == 0 {
            return input("a and r must be positive");
        }
        if u.len() != a {
            return input(format!("expected {a} parameters u, got {}", u.len()));
        }
        if r > 8 {
            return input("r larger than 8 is not supported");
        }
        let poly = char_poly(&u);
        let mut basis = Vec::new();
        for d in Diagram::all(r) {
            let slots: Vec<(bool, usize)> = {
                let mut s: Vec<(bool, usize)> = d.top_arcs().iter().map(|&(p, _)| (true, p)).collect();
                s.extend(d.through().iter().map(|&(_, b)| (false, b)));
                s.extend(d.bottom_arcs().iter().map(|&(p, _)| (false, p)));
                s
            };
            for dots in crate::hecke::bounded_exponents(a, r) {
                let mut top = vec![0u8; r];
                let mut bottom = vec![0u8; r];
                for (&(is_top, c), &k) in slots.iter().zip(&dots) {
                    if is_top {
                        top[c - 1] = k;
                    } else {
                        bottom[c - 1] = k;
                    }
                }
                basis.push(BrauerMonomial { diagram: d.clone(), top, bottom });
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(BrauerAlgebra {
            a,
            r,
            u,
            omega,
            poly,
            basis,
            index,
            act_cache: Mutex::new(HashMap::new()),
            bubble_cache: Mutex::new(HashMap::new()),
            power_cache: Mutex::new(HashMap::new()),
            active: Mutex::new(HashSet::new()),
        })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn u(&self) -> &[Q] {
        &self.u
    }

    pub fn omega(&self) -> &[Q] {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BrauerMonomial] {
        &self.basis
    }

    pub fn index_of(&self, m: &BrauerMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    fn identity_monomial(&self) -> BrauerMonomial {
        BrauerMonomial {
            diagram: Diagram::identity(self.r),
            top: vec![0; self.r],
            bottom: vec![0; self.r],
        }
    }

    pub fn one(&self) -> BrauerElement {
        BrauerElement::monomial(self.identity_monomial())
    }

    pub fn scalar(&self, c: Q) -> BrauerElement {
        BrauerElement::term(self.identity_monomial(), c)
    }

    pub fn word(&self, word: &[Letter]) -> Result<BrauerElement> {
        self.check_word(word)?;
        self.eval_word(word)
    }

    pub fn s(&self, i: usize) -> Result<BrauerElement> {
        self.word(&[Letter::S(i)])
    }

    pub fn e(&self, i: usize) -> Result<BrauerElement> {
        self.word(&[Letter::E(i)])
    }

    pub fn x(&self, j: usize) -> Result<BrauerElement> {
        self.word(&[Letter::X(j)])
    }

    fn check_word(&self, word: &[Letter]) -> Result<()> {
        for &l in word {
            let ok = match l {
                Letter::S(i) | Letter::E(i) => i >= 1 && i < self.r,
                Letter::X(j) => j >= 1 && j <= self.r,
            };
            if !ok {
                return input(format!("letter {l:?} out of range for r = {}", self.r));
            }
        }
        Ok(())
    }

    /// The word X^α · (canonical word of D) · X^β spelling a normal monomial.
    pub fn monomial_word(&self, m: &BrauerMonomial) -> Vec<Letter> {
        let mut w: Vec<Letter> = Vec::new();
        for (t, &k) in m.top.iter().enumerate() {
            w.extend(x_letters(t + 1, k as usize));
        }
        w.extend(m.diagram.canonical_word());
        for (b, &k) in m.bottom.iter().enumerate() {
            w.extend(x_letters(b + 1, k as usize));
        }
        w
    }

    fn bottom_letters(m: &BrauerMonomial) -> Vec<Letter> {
        let mut w = Vec::new();
        for (b, &k) in m.bottom.iter().enumerate() {
            w.extend(x_letters(b + 1, k as usize));
        }
        w
    }

    fn top_letters(m: &BrauerMonomial) -> Vec<Letter> {
        let mut w = Vec::new();
        for (t, &k) in m.top.iter().enumerate() {
            w.extend(x_letters(t + 1, k as usize));
        }
        w
    }

    fn guarded<T>(&self, task: Task, f: impl FnOnce() -> Result<T>) -> Result<T> {
        if !self.active.lock().expect("lock").insert(task.clone()) {
            return Err(Error::Verification("rewriting re-entered an unfinished reduction".into()));
        }
        let out = f();
        self.active.lock().expect("lock").remove(&task);
        out
    }

    /// Right action of a single letter on a normal monomial.
    pub fn act(&self, m: &BrauerMonomial, g: Letter) -> Result<BrauerElement> {
        let key = (m.clone(), g);
        if let Some(v) = self.act_cache.lock().expect("lock").get(&key) {
            return Ok(v.clone());
        }
        let out = self.guarded(Task::Act(m.clone(), g), || match g {
            Letter::X(j) => self.act_x(m, j),
            Letter::S(i) => self.act_s(m, i),
            Letter::E(i) => self.act_e(m, i),
        })?;
        self.act_cache.lock().expect("lock").insert(key, out.clone());
        Ok(out)
    }

    /// x · w for an element x and a word w.
    pub fn act_word(&self, x: &BrauerElement, word: &[Letter]) -> Result<BrauerElement> {
        let mut cur = x.clone();
        for &g in word {
            let mut next = BrauerElement::zero();
            for (m, c) in cur.iter() {
                next.add_scaled(&self.act(m, g)?, c);
            }
            cur = next;
        }
        Ok(cur)
    }

    fn eval_from(&self, m: &BrauerMonomial, word: &[Letter]) -> Result<BrauerElement> {
        self.act_word(&BrauerElement::monomial(m.clone()), word)
    }

    fn eval_word(&self, word: &[Letter]) -> Result<BrauerElement> {
        self.act_word(&self.one(), word)
    }

    fn act_x(&self, m: &BrauerMonomial, j: usize) -> Result<BrauerElement> {
        let d = &m.diagram;
        if let End::Bottom(i) = d.partner(End::Bottom(j)) {
            if i < j {
                // Dot on the right end of a bottom arc: slide it to the left end.
                let (end, neg, corr) = slide(&d.canonical_word(), End::Bottom(j));
                debug_assert_eq!(end, End::Bottom(i));
                let mut out = self.act(m, Letter::X(i))?.scaled(&sign(neg));
                let prefix = Self::top_letters(m);
                let suffix = Self::bottom_letters(m);
                for (c, w) in corr {
                    let full: Vec<Letter> = prefix.iter().chain(&w).chain(&suffix).copied().collect();
                    out.add_scaled(&self.eval_word(&full)?, &c);
                }
                return Ok(out);
            }
        }
        let mut n = m.clone();
        n.bottom[j - 1] += 1;
        if (n.bottom[j - 1] as usize) < self.a {
            return Ok(BrauerElement::monomial(n));
        }
        n.bottom[j - 1] = 0;
        let power = self.power(j)?;
        let mut out = BrauerElement::zero();
        for (t, c) in power.iter() {
            out.add_scaled(&self.eval_from(&n, &self.monomial_word(t))?, c);
        }
        Ok(out)
    }

    fn act_s(&self, m: &BrauerMonomial, i: usize) -> Result<BrauerElement> {
        let (p, qd) = (m.bottom[i - 1] as usize, m.bottom[i] as usize);
        let mut base = m.clone();
        base.bottom[i - 1] = 0;
        base.bottom[i] = 0;
        let sd = Diagram::generator(Letter::S(i), self.r);
        let mut out = BrauerElement::zero();
        for ((l0, l1), mid, (r0, r1), c) in expand_dots_through_s(p, qd) {
            let mut start = base.clone();
            start.bottom[i - 1] = l0 as u8;
            start.bottom[i] = l1 as u8;
            let middle = match mid {
                Middle::S => {
                    debug_assert!(l0 == 0 && l1 == 0);
                    let (diagram, _) = start.diagram.compose(&sd);
                    BrauerElement::monomial(BrauerMonomial { diagram, ..start })
                }
                Middle::E => self.act(&start, Letter::E(i))?,
                Middle::One => BrauerElement::monomial(start),
            };
            let tail: Vec<Letter> = x_letters(i, r0).chain(x_letters(i + 1, r1)).collect();
            out.add_scaled(&self.act_word(&middle, &tail)?, &q(c));
        }
        Ok(out)
    }

    fn act_e(&self, m: &BrauerMonomial, i: usize) -> Result<BrauerElement> {
        let (p, qd) = (m.bottom[i - 1] as usize, m.bottom[i] as usize);
        // X_i^p X_{i+1}^q E_i = (−1)^q X_i^{p+q} E_i, and other bottom dots commute with E_i.
        let mut rest = Vec::new();
        for (b, &k) in m.bottom.iter().enumerate() {
            if b + 1 != i && b + 1 != i + 1 {
                rest.extend(x_letters(b + 1, k as usize));
            }
        }
        let core = self.cap_with_dots(&m.top, &m.diagram, i, p + qd)?;
        Ok(self.act_word(&core, &rest)?.scaled(&sign_pow(true, qd)))
    }

    /// `X^top · D · X_i^k · E_i` in normal form.
    fn cap_with_dots(&self, top: &[u8], d: &Diagram, i: usize, k: usize) -> Result<BrauerElement> {
        let r = self.r;
        let bare = |diagram: Diagram| BrauerMonomial { diagram, top: top.to_vec(), bottom: vec![0; r] };
        if d.partner(End::Bottom(i)) == End::Bottom(i + 1) {
            // A closed loop carrying k dots: E_i X_i^k E_i = W E_i with W on strands below i.
            let w = self.bubble(i, k)?;
            let base = bare(d.clone());
            let mut out = BrauerElement::zero();
            for (t, c) in w.iter() {
                out.add_scaled(&self.eval_from(&base, &self.monomial_word(t))?, c);
            }
            return Ok(out);
        }
        let (joined, loops) = d.compose(&Diagram::generator(Letter::E(i), r));
        debug_assert_eq!(loops, 0);
        if k == 0 {
            return Ok(BrauerElement::monomial(bare(joined)));
        }
        let prefix: Vec<Letter> = top
            .iter()
            .enumerate()
            .flat_map(|(t, &n)| x_letters(t + 1, n as usize))
            .collect();
        let (end, neg, corr) = slide_many(&d.canonical_word(), End::Bottom(i), k);
        let mut out = BrauerElement::zero();
        for (c, w) in corr {
            let full: Vec<Letter> =
                prefix.iter().chain(&w).copied().chain(std::iter::once(Letter::E(i))).collect();
            out.add_scaled(&self.eval_word(&full)?, &c);
        }
        let main = match end {
            End::Bottom(b) => self.eval_from(&bare(joined), &x_letters(b, k).collect::<Vec<_>>())?,
            End::Top(t) => match joined.partner(End::Top(t)) {
                End::Top(t2) if t < t2 => self.with_top_dots(top, &joined, t, k)?,
                other => {
                    let (end2, neg2, corr2) = slide_many(&joined.canonical_word(), End::Top(t), k);
                    debug_assert_eq!(end2, other);
                    let mut y = BrauerElement::zero();
                    for (c, w) in corr2 {
                        let full: Vec<Letter> = prefix.iter().chain(&w).copied().collect();
                        y.add_scaled(&self.eval_word(&full)?, &c);
                    }
                    let moved = match other {
                        End::Top(t2) => self.with_top_dots(top, &joined, t2, k)?,
                        End::Bottom(b) => {
                            self.eval_from(&bare(joined.clone()), &x_letters(b, k).collect::<Vec<_>>())?
                        }
                    };
                    y.add_scaled(&moved, &sign_pow(neg2, k));
                    y
                }
            },
        };
        out.add_scaled(&main, &sign_pow(neg, k));
        Ok(out)
    }

    /// `X_t^k · X^top · D` where t is the left end of a top arc of D without dots.
    fn with_top_dots(&self, top: &[u8], d: &Diagram, t: usize, k: usize) -> Result<BrauerElement> {
        let mut dots = top.to_vec();
        debug_assert_eq!(dots[t - 1], 0);
        if k < self.a {
            dots[t - 1] = k as u8;
            return Ok(BrauerElement::monomial(BrauerMonomial {
                diagram: d.clone(),
                top: dots,
                bottom: vec![0; self.r],
            }));
        }
        // Reduce through the anti-involution: the flipped arc sits at the bottom.
        dots[t - 1] = (self.a - 1) as u8;
        let flipped = BrauerMonomial { diagram: d.flip(), top: vec![0; self.r], bottom: dots };
        let extra: Vec<Letter> = x_letters(t, k + 1 - self.a).collect();
        let y = self.eval_from(&flipped, &extra)?;
        self.tau(&y)
    }

    /// The anti-involution fixing every generator.
    pub fn tau(&self, x: &BrauerElement) -> Result<BrauerElement> {
        let mut out = BrauerElement::zero();
        for (m, c) in x.iter() {
            let mut w = Self::bottom_letters(m);
            w.extend(m.diagram.flip().canonical_word());
            w.extend(Self::top_letters(m));
            out.add_scaled(&self.eval_word(&w)?, c);
        }
        Ok(out)
    }

    /// W with `E_i X_i^k E_i = W E_i`, W supported on strands 1..i−1.
    fn bubble(&self, i: usize, k: usize) -> Result<BrauerElement> {
        if i == 1 {
            return match self.omega.get(k) {
                Some(w) => Ok(self.scalar(w.clone())),
                None => Err(Error::OmegaExhausted { requested: k, available: self.omega.len() - 1 }),
            };
        }
        if let Some(v) = self.bubble_cache.lock().expect("lock").get(&(i, k)) {
            return Ok(v.clone());
        }
        let w = self.guarded(Task::Bubble(i, k), || {
            // E_i = S_{i−1} S_i E_{i−1} S_i S_{i−1}
            let mut word = vec![Letter::E(i)];
            word.extend(x_letters(i, k));
            word.extend([Letter::S(i - 1), Letter::S(i), Letter::E(i - 1), Letter::S(i), Letter::S(i - 1)]);
            let z = self.eval_word(&word)?;
            let mut w = BrauerElement::zero();
            for (m, c) in z.iter() {
                w.add_term(self.strip_cap(m, i)?, c.clone());
            }
            Ok(w)
        })?;
        self.bubble_cache.lock().expect("lock").insert((i, k), w.clone());
        Ok(w)
    }

    /// Removes an undotted E_i factor from a monomial of the form W·E_i.
    fn strip_cap(&self, m: &BrauerMonomial, i: usize) -> Result<BrauerMonomial> {
        let d = &m.diagram;
        let r = self.r;
        let ok = d.partner(End::Top(i)) == End::Top(i + 1)
            && d.partner(End::Bottom(i)) == End::Bottom(i + 1)
            && m.top[i - 1] == 0
            && m.bottom[i - 1] == 0
            && (i + 2..=r).all(|j| d.partner(End::Top(j)) == End::Bottom(j) && m.bottom[j - 1] == 0);
        if !ok {
            return Err(Error::Verification(format!(
                "closed loop at position {i} did not factor through E_{i}: {m:?}"
            )));
        }
        let mut partner: Vec<u8> = (0..2 * r).map(|p| d.partner_point(p) as u8).collect();
        for c in [i, i + 1] {
            partner[c - 1] = (r + c - 1) as u8;
            partner[r + c - 1] = (c - 1) as u8;
        }
        Ok(BrauerMonomial { diagram: Diagram::from_partner(partner), top: m.top.clone(), bottom: m.bottom.clone() })
    }

    /// Normal form of X_j^a, expressed on the identity side.
    fn power(&self, j: usize) -> Result<BrauerElement> {
        if let Some(v) = self.power_cache.lock().expect("lock").get(&j) {
            return Ok(v.clone());
        }
        let out = self.guarded(Task::Power(j), || {
            let a = self.a;
            if j == 1 {
                let mut out = BrauerElement::zero();
                for k in 0..a {
                    let mut m = self.identity_monomial();
                    m.bottom[0] = k as u8;
                    out.add_term(m, -self.poly[k].clone());
                }
                return Ok(out);
            }
            // X_j^a = S X_{j−1}^a S − Σ_m X_j^m (E − 1) X_{j−1}^{a−1−m} S with S = S_{j−1}, E = E_{j−1}.
            let (s, e) = (Letter::S(j - 1), Letter::E(j - 1));
            let prev = self.power(j - 1)?;
            let mut out = BrauerElement::zero();
            for (t, c) in prev.iter() {
                let mut w = vec![s];
                w.extend(self.monomial_word(t));
                w.push(s);
                out.add_scaled(&self.eval_word(&w)?, c);
            }
            for m in 0..a {
                let mut with_e: Vec<Letter> = x_letters(j, m).collect();
                with_e.push(e);
                with_e.extend(x_letters(j - 1, a - 1 - m));
                with_e.push(s);
                let mut without: Vec<Letter> = x_letters(j, m).collect();
                without.extend(x_letters(j - 1, a - 1 - m));
                without.push(s);
                out.add_scaled(&self.eval_word(&with_e)?, &q(-1));
                out.add_scaled(&self.eval_word(&without)?, &q(1));
            }
            Ok(out)
        })?;
        self.power_cache.lock().expect("lock").insert(j, out.clone());
        Ok(out)
    }

    pub fn mul(&self, x: &BrauerElement, y: &BrauerElement) -> Result<BrauerElement> {
        let mut out = BrauerElement::zero();
        for (n, c) in y.iter() {
            out.add_scaled(&self.act_word(x, &self.monomial_word(n))?, c);
        }
        Ok(out)
    }

    pub fn mul_all(&self, factors: &[BrauerElement]) -> Result<BrauerElement> {
        let mut out = self.one();
        for f in factors {
            out = self.mul(&out, f)?;
        }
        Ok(out)
    }

    pub fn to_vector(&self, x: &BrauerElement) -> SVec {
        x.iter().map(|(m, c)| (self.index[m], c.clone())).collect()
    }

    pub fn from_vector(&self, v: &SVec) -> BrauerElement {
        v.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())).collect()
    }

    /// Every defining relation within range, with (5) up to `max_k` and the
    /// braid-type E relations in their diagrammatically valid form.
    pub fn relators(&self, max_k: usize) -> Vec<Relator> {
        use Letter::{E, S, X};
        let r = self.r;
        let one = Q::one;
        let m1 = || -Q::one();
        let mut out = Vec::new();
        let mut push = |name: String, terms: Vec<(Q, Vec<Letter>)>| out.push(Relator { name, terms });
        let idx: Vec<usize> = (1..r).collect();
        for &i in &idx {
            push(format!("S{i}S{i}=1"), vec![(one(), vec![S(i), S(i)]), (m1(), vec![])]);
            push(format!("E{i}S{i}=E{i}"), vec![(one(), vec![E(i), S(i)]), (m1(), vec![E(i)])]);
            push(format!("S{i}E{i}=E{i}"), vec![(one(), vec![S(i), E(i)]), (m1(), vec![E(i)])]);
            push(
                format!("S{i}X{i}-X{}S{i}=E{i}-1", i + 1),
                vec![
                    (one(), vec![S(i), X(i)]),
                    (m1(), vec![X(i + 1), S(i)]),
                    (m1(), vec![E(i)]),
                    (one(), vec![]),
                ],
            );
            push(
                format!("X{i}S{i}-S{i}X{}=E{i}-1", i + 1),
                vec![
                    (one(), vec![X(i), S(i)]),
                    (m1(), vec![S(i), X(i + 1)]),
                    (m1(), vec![E(i)]),
                    (one(), vec![]),
                ],
            );
            push(
                format!("E{i}(X{i}+X{})=0", i + 1),
                vec![(one(), vec![E(i), X(i)]), (one(), vec![E(i), X(i + 1)])],
            );
            push(
                format!("(X{i}+X{})E{i}=0", i + 1),
                vec![(one(), vec![X(i), E(i)]), (one(), vec![X(i + 1), E(i)])],
            );
            if i + 1 < r {
                let j = i + 1;
                push(
                    format!("S{i}S{j}S{i}=S{j}S{i}S{j}"),
                    vec![(one(), vec![S(i), S(j), S(i)]), (m1(), vec![S(j), S(i), S(j)])],
                );
                push(
                    format!("S{i}E{j}E{i}=S{j}E{i}"),
                    vec![(one(), vec![S(i), E(j), E(i)]), (m1(), vec![S(j), E(i)])],
                );
                push(
                    format!("E{i}E{j}S{i}=E{i}S{j}"),
                    vec![(one(), vec![E(i), E(j), S(i)]), (m1(), vec![E(i), S(j)])],
                );
                push(
                    format!("E{i}E{j}E{i}=E{i}"),
                    vec![(one(), vec![E(i), E(j), E(i)]), (m1(), vec![E(i)])],
                );
                push(
                    format!("E{j}E{i}E{j}=E{j}"),
                    vec![(one(), vec![E(j), E(i), E(j)]), (m1(), vec![E(j)])],
                );
            }
            for &j in &idx {
                if j > i + 1 {
                    push(format!("S{i}S{j}=S{j}S{i}"), vec![(one(), vec![S(i), S(j)]), (m1(), vec![S(j), S(i)])]);
                    push(format!("E{i}E{j}=E{j}E{i}"), vec![(one(), vec![E(i), E(j)]), (m1(), vec![E(j), E(i)])]);
                }
                if j + 1 < i || j > i + 1 {
                    push(format!("S{i}E{j}=E{j}S{i}"), vec![(one(), vec![S(i), E(j)]), (m1(), vec![E(j), S(i)])]);
                }
            }
            for j in 1..=r {
                if j != i && j != i + 1 {
                    push(format!("S{i}X{j}=X{j}S{i}"), vec![(one(), vec![S(i), X(j)]), (m1(), vec![X(j), S(i)])]);
                    push(format!("E{i}X{j}=X{j}E{i}"), vec![(one(), vec![E(i), X(j)]), (m1(), vec![X(j), E(i)])]);
                }
            }
        }
        for i in 1..=r {
            for j in i + 1..=r {
                push(format!("X{i}X{j}=X{j}X{i}"), vec![(one(), vec![X(i), X(j)]), (m1(), vec![X(j), X(i)])]);
            }
        }
        if r >= 2 {
            for k in 0..=max_k.min(self.omega.len() - 1) {
                let mut w = vec![E(1)];
                w.extend(x_letters(1, k));
                w.push(E(1));
                push(format!("E1X1^{k}E1=w{k}E1"), vec![(one(), w), (-self.omega[k].clone(), vec![E(1)])]);
            }
        }
        push(
            "(X1-u1)...(X1-ua)=0".to_string(),
            self.poly.iter().enumerate().map(|(k, c)| (c.clone(), x_letters(1, k).collect())).collect(),
        );
        out
    }

    /// The operator x ↦ x·R of a relator applied to an element.
    pub fn apply_relator(&self, x: &BrauerElement, rel: &Relator) -> Result<BrauerElement> {
        let mut out = BrauerElement::zero();
        for (c, w) in &rel.terms {
            out.add_scaled(&self.act_word(x, w)?, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn alg(a: usize, r: usize, u: &[Q]) -> BrauerAlgebra {
        BrauerAlgebra::new(a, r, u.to_vec()).unwrap()
    }

    #[test]
    fn dimension_counts() {
        assert_eq!(alg(1, 3, &[q(2)]).dim(), 15);
        assert_eq!(alg(2, 2, &[q(1), q(3)]).dim(), 12);
        assert_eq!(generic_dimension(2, 3), 120);
        assert_eq!(generic_dimension(3, 2), 27);
    }

    #[test]
    fn loop_value_and_arc_absorption() {
        let b = alg(2, 3, &[qr(1, 3), q(2)]);
        let e1 = b.e(1).unwrap();
        let s1 = b.s(1).unwrap();
        assert_eq!(b.mul(&e1, &e1).unwrap(), e1.scaled(&b.omega()[0]));
        assert_eq!(b.mul(&e1, &s1).unwrap(), e1);
        assert_eq!(b.mul(&s1, &e1).unwrap(), e1);
        let x1 = b.x(1).unwrap();
        let x2 = b.x(2).unwrap();
        let mut sum = x1.clone();
        sum.add(&x2);
        assert!(b.mul(&e1, &sum).unwrap().is_zero());
        assert!(b.mul(&sum, &e1).unwrap().is_zero());
    }

    #[test]
    fn normal_monomial_words_evaluate_to_themselves() {
        let b = alg(2, 3, &[q(1), qr(-1, 2)]);
        for m in b.basis() {
            let v = b.word(&b.monomial_word(m)).unwrap();
            assert_eq!(v, BrauerElement::monomial(m.clone()), "{m:?}");
        }
    }

    #[test]
    fn relations_hold_as_operators() {
        for (a, r, u) in [
            (1usize, 3usize, vec![q(2)]),
            (2, 2, vec![q(1), q(3)]),
            (2, 3, vec![qr(1, 3), q(2)]),
            (3, 2, vec![q(0), q(1), qr(5, 2)]),
        ] {
            let b = alg(a, r, &u);
            for rel in b.relators(a + 2) {
                for m in b.basis() {
                    let v = b.apply_relator(&BrauerElement::monomial(m.clone()), &rel).unwrap();
                    assert!(v.is_zero(), "a={a} r={r} {} fails on {m:?}: {v:?}", rel.name);
                }
            }
        }
    }

    #[test]
    fn tau_reverses_products() {
        let b = alg(2, 3, &[q(1), q(-2)]);
        let x = b.word(&[Letter::S(1), Letter::X(2), Letter::E(2)]).unwrap();
        let y = b.word(&[Letter::X(3), Letter::E(1), Letter::S(2), Letter::X(1)]).unwrap();
        let lhs = b.tau(&b.mul(&x, &y).unwrap()).unwrap();
        let rhs = b.mul(&b.tau(&y).unwrap(), &b.tau(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        for m in b.basis().iter().step_by(7) {
            let v = BrauerElement::monomial(m.clone());
            assert_eq!(b.tau(&b.tau(&v).unwrap()).unwrap(), v);
        }
    }
}
