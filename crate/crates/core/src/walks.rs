//! Constructive connectivity for `Δ(q,c)` when `q > r + s`.
//!
//! Both walks here move "stones" (elements of a multiset) one position at a
//! time along `V`, tracking the running change of the sum. Once a running
//! offset repeats, the jumps between the two equal offsets are replayed on the
//! original multiset, which yields a new multiset with the same sum that is
//! strictly more spread out ([`expansion_step`]) or strictly pulled towards the
//! other side ([`criss_cross`]). Iterating these produces chains of members of
//! `Π(q,c)` whose consecutive members share an element.
//!
//! [`connect`] combines them into a [`WalkCertificate`] for any two vertices of
//! `Δ(q,c)`, and [`verify_certificate`] checks such a certificate independently.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{enumerate_pi, PiFamily};
use crate::multisets::{Bidegree, Multiset};
use crate::values::{GapProfile, ValueSet};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

/// One stone moved to the adjacent element of `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Jump {
    pub from: i64,
    pub to: i64,
    pub direction: Direction,
    /// Running offset after this jump.
    pub offset: i64,
}

impl Jump {
    /// The gap crossed, as its lower endpoint in `V`.
    pub fn gap_start(&self) -> i64 {
        self.from.min(self.to)
    }
}

/// Record of one run of the expansion algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionTrace {
    /// `steps[i - 1]` is step `i`.
    pub steps: Vec<Jump>,
    /// `s_0, s_1, …, s_l` where `l` is the step at which an offset first repeats.
    pub offsets: Vec<i64>,
    /// `(j, l)` with `j < l` and `s_j = s_l`.
    pub repeat: (usize, usize),
    /// `C_0, …, C_l`.
    pub intermediates: Vec<Multiset>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    /// `C'`: the original `C` with jumps `j+1..=l` replayed.
    pub replaced: Multiset,
    pub trace: ExpansionTrace,
}

/// Which input a [`Meeting`] chain was grown from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    First,
    Second,
}

/// A member `Q` of `Π(q,c)` meeting both inputs, with the chain that reached it.
///
/// `chain[0]` is the input named by `origin`, `chain.last()` is `Q`, and
/// consecutive members share an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Meeting {
    pub q: Multiset,
    pub chain: Vec<Multiset>,
    pub origin: Origin,
}

impl Meeting {
    fn immediate(p: &Multiset) -> Self {
        Meeting {
            q: p.clone(),
            chain: vec![p.clone()],
            origin: Origin::First,
        }
    }
}

/// The four-way split used by the criss-cross walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrissCrossState {
    pub f: i64,
    pub f_prime: i64,
    pub b: Multiset,
    pub b_prime: Multiset,
    pub x: Multiset,
    pub y: Multiset,
    pub x_prime: Multiset,
    pub y_prime: Multiset,
}

/// One outer round of the criss-cross walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrissCrossRound {
    /// Split at the start of the round.
    pub state: CrissCrossState,
    pub steps: Vec<Jump>,
    pub offsets: Vec<i64>,
    pub repeat: (usize, usize),
    /// `{f} + B̃` after replaying the repeat window.
    pub result: Multiset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Walk `Y` of `P` towards `P'` directly.
    Direct,
    /// Walk `Y'` of `P'` towards `P`, computed on the reflection of `V`.
    Reflected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrissCross {
    pub meeting: Meeting,
    /// Side that produced the meeting; `None` when the inputs already intersect.
    pub side: Option<Side>,
    /// Whether the side chosen first failed and the other side was used.
    pub fell_back: bool,
    /// Rounds of the successful side, in that side's coordinates.
    pub rounds: Vec<CrissCrossRound>,
}

/// A chain in `Π(q,c)` joining vertex `x` to vertex `y` in `Δ(q,c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkCertificate {
    pub x: i64,
    pub y: i64,
    pub bidegree: Bidegree,
    pub chain: Vec<Multiset>,
}

impl fmt::Display for WalkCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ~ {} in {}:", self.x, self.y, self.bidegree)?;
        for (i, m) in self.chain.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { " " } else { " -> " }, m)?;
        }
        Ok(())
    }
}

fn checked_offset(prev: i64, from: i64, to: i64) -> Result<i64> {
    to.checked_sub(from)
        .and_then(|d| prev.checked_add(d))
        .ok_or(Error::Overflow("running offset"))
}

/// `base - Σ from + Σ to` over the given jumps.
fn replay(base: &Multiset, jumps: &[Jump]) -> Result<Multiset> {
    let froms: Multiset = jumps.iter().map(|j| j.from).collect();
    let tos: Multiset = jumps.iter().map(|j| j.to).collect();
    Ok(base.subtract(&froms)?.add(&tos))
}

fn require_in(values: &ValueSet, p: &Multiset, name: &str) -> Result<()> {
    if p.supported_in(values) {
        Ok(())
    } else {
        Err(Error::precondition(format!(
            "{name} = {p} has support outside V"
        )))
    }
}

/// One application of the expansion algorithm to `P = A + C`.
///
/// Requires `|C| = r + s`, and that `C` avoids both `min V` and `max V`.
/// Stops at the first repeated offset and replays the jumps in between, so the
/// result has the same cardinality and sum as `C` and `m(A + C') > m(A + C)`.
pub fn expansion_step(values: &ValueSet, a: &Multiset, c: &Multiset) -> Result<Expansion> {
    let profile = values.gap_profile()?;
    expansion_with_profile(values, &profile, a, c)
}

fn expansion_with_profile(
    values: &ValueSet,
    profile: &GapProfile,
    a: &Multiset,
    c: &Multiset,
) -> Result<Expansion> {
    let width = profile.bound() as usize;
    if c.len() != width {
        return Err(Error::precondition(format!(
            "|C| = {} but r + s = {width}",
            c.len()
        )));
    }
    require_in(values, c, "C")?;
    require_in(values, a, "A")?;
    if c.contains(values.min()) || c.contains(values.max()) {
        return Err(Error::precondition(format!(
            "C = {c} contains an extreme element of V"
        )));
    }

    let mut active = c.clone();
    let mut current = c.clone();
    let mut steps = Vec::with_capacity(width);
    let mut offsets = vec![0i64];
    let mut intermediates = vec![c.clone()];
    let mut seen: HashMap<i64, usize> = HashMap::from([(0, 0)]);
    let mut repeat = None;

    for i in 1..=width {
        let prev = offsets[i - 1];
        let (from, to, direction) = if prev <= 0 {
            let x = active
                .pop_max()
                .ok_or_else(|| Error::invariant("expansion", "active pool exhausted"))?;
            let to = values
                .next_above(x)?
                .ok_or_else(|| Error::invariant("expansion", format!("{x} has no successor")))?;
            (x, to, Direction::Up)
        } else {
            let x = active
                .pop_min()
                .ok_or_else(|| Error::invariant("expansion", "active pool exhausted"))?;
            let to = values
                .next_below(x)?
                .ok_or_else(|| Error::invariant("expansion", format!("{x} has no predecessor")))?;
            (x, to, Direction::Down)
        };
        let offset = checked_offset(prev, from, to)?;
        current.remove_one(from);
        current.insert(to);
        steps.push(Jump {
            from,
            to,
            direction,
            offset,
        });
        offsets.push(offset);
        intermediates.push(current.clone());
        if let Some(&j) = seen.get(&offset) {
            repeat = Some((j, i));
            break;
        }
        seen.insert(offset, i);
    }

    let (j, l) = repeat.ok_or_else(|| {
        Error::invariant(
            "expansion",
            format!("no repeated offset among {offsets:?} for C = {c}"),
        )
    })?;
    let replaced = replay(c, &steps[j..l])?;

    if replaced.sum()? != c.sum()? {
        return Err(Error::invariant(
            "expansion",
            format!("replay changed the sum: {c} -> {replaced}"),
        ));
    }
    let before = a.add(c).m()?;
    let after = a.add(&replaced).m()?;
    if after <= before {
        return Err(Error::invariant(
            "expansion",
            format!("m did not increase ({before} -> {after}) for A = {a}, C = {c} -> {replaced}"),
        ));
    }

    Ok(Expansion {
        replaced,
        trace: ExpansionTrace {
            steps,
            offsets,
            repeat: (j, l),
            intermediates,
        },
    })
}

struct Context {
    profile: GapProfile,
    bidegree: Bidegree,
}

fn pair_context(values: &ValueSet, p: &Multiset, p2: &Multiset) -> Result<Context> {
    require_in(values, p, "P")?;
    require_in(values, p2, "P'")?;
    let bidegree = p.bidegree()?;
    if p2.bidegree()? != bidegree {
        return Err(Error::precondition(format!(
            "P = {p} and P' = {p2} have different bidegrees"
        )));
    }
    let profile = values.gap_profile()?;
    if bidegree.q as i64 <= profile.bound() {
        return Err(Error::precondition(format!(
            "q = {} does not exceed r + s = {}",
            bidegree.q,
            profile.bound()
        )));
    }
    Ok(Context { profile, bidegree })
}

/// Splits `anchor` plus the largest remaining elements off `p` as the fixed
/// part `A` of size `q - (r+s)`; the rest is `C`.
fn fixed_part(p: &Multiset, anchor: i64, width: usize) -> Result<(Multiset, Multiset)> {
    let mut rest = p.subtract(&Multiset::of(&[anchor]))?;
    let keep = p.len() - width - 1;
    let mut a = Multiset::of(&[anchor]);
    for _ in 0..keep {
        // keep > 0 implies rest is non-empty since |rest| = q - 1 ≥ keep
        if let Some(x) = rest.pop_max() {
            a.insert(x);
        }
    }
    Ok((a, rest))
}

/// Walks from `p` towards `p2` by repeated expansion with a fixed part
/// containing `anchor`, until a member meets `p2`.
///
/// Requires both extremes of `P + P'` to occur in `P'`. Inputs that already
/// intersect are returned as `Q = P`.
pub fn multiple_expansion(
    values: &ValueSet,
    p: &Multiset,
    p2: &Multiset,
    anchor: i64,
) -> Result<Meeting> {
    let ctx = pair_context(values, p, p2)?;
    if !p.contains(anchor) {
        return Err(Error::precondition(format!("anchor {anchor} is not in P = {p}")));
    }
    if p.intersects(p2) {
        return Ok(Meeting::immediate(p));
    }
    let (lo, hi) = extremes(p, p2);
    if !(p2.contains(lo) && p2.contains(hi)) {
        return Err(Error::precondition(format!(
            "extremes {lo} and {hi} of P + P' must both occur in P' = {p2}"
        )));
    }

    let width = ctx.profile.bound() as usize;
    let (a, mut c) = fixed_part(p, anchor, width)?;
    // m is bounded by T·lo ≤ m ≤ T·hi while no member has reached P'
    let t = (ctx.bidegree.q as i128) * (ctx.bidegree.q as i128 + 1) / 2;
    let cap = cap_from(t * (hi as i128 - lo as i128) + 1);

    let mut chain = vec![p.clone()];
    loop {
        let current = chain.last().expect("chain is non-empty");
        if current.intersects(p2) {
            return Ok(Meeting {
                q: current.clone(),
                chain,
                origin: Origin::First,
            });
        }
        if chain.len() > cap {
            return Err(Error::invariant(
                "multiple expansion",
                format!("no meeting after {cap} expansions; last = {current}"),
            ));
        }
        let step = expansion_with_profile(values, &ctx.profile, &a, &c).map_err(|e| match e {
            Error::Precondition(msg) => Error::invariant("multiple expansion", msg),
            other => other,
        })?;
        c = step.replaced;
        chain.push(a.add(&c));
    }
}

fn cap_from(bound: i128) -> usize {
    usize::try_from(bound.max(1)).unwrap_or(usize::MAX)
}

fn extremes(p: &Multiset, p2: &Multiset) -> (i64, i64) {
    let lo = match (p.least(), p2.least()) {
        (Some(a), Some(b)) => a.min(b),
        (a, b) => a.or(b).unwrap_or(0),
    };
    let hi = match (p.greatest(), p2.greatest()) {
        (Some(a), Some(b)) => a.max(b),
        (a, b) => a.or(b).unwrap_or(0),
    };
    (lo, hi)
}

/// Splits `B` into `X` (elements below every element of `B'`) and `Y`, and
/// `B'` into `X'` (elements above every element of `B`) and `Y'`.
pub fn split_for_size_lemma(
    b: &Multiset,
    b_prime: &Multiset,
) -> Result<(Multiset, Multiset, Multiset, Multiset)> {
    let (Some(b_max), Some(bp_min)) = (b.greatest(), b_prime.least()) else {
        return Err(Error::precondition("B and B' must be non-empty"));
    };
    let (x, y): (Vec<i64>, Vec<i64>) = b.items().iter().partition(|&&v| v < bp_min);
    let (xp, yp): (Vec<i64>, Vec<i64>) = b_prime.items().iter().partition(|&&v| v > b_max);
    Ok((x.into(), y.into(), xp.into(), yp.into()))
}

fn split_state(f: i64, f_prime: i64, b: &Multiset, b_prime: &Multiset) -> Result<CrissCrossState> {
    let (x, y, x_prime, y_prime) = split_for_size_lemma(b, b_prime)?;
    Ok(CrissCrossState {
        f,
        f_prime,
        b: b.clone(),
        b_prime: b_prime.clone(),
        x,
        y,
        x_prime,
        y_prime,
    })
}

/// Initial split of a criss-cross-eligible pair: `f = min P`, `f' = max P'`.
pub fn criss_cross_split(p: &Multiset, p2: &Multiset) -> Result<CrissCrossState> {
    let (Some(f), Some(f_prime)) = (p.least(), p2.greatest()) else {
        return Err(Error::precondition("P and P' must be non-empty"));
    };
    let b = p.subtract(&Multiset::of(&[f]))?;
    let b_prime = p2.subtract(&Multiset::of(&[f_prime]))?;
    split_state(f, f_prime, &b, &b_prime)
}

/// Finds a member of `Π(q,c)` meeting both `p` and `p2` when the minimum of
/// `P + P'` lies in `P` and the maximum in `P'`.
///
/// Tries first the side singled out by the size split (`|Y|` larger than the
/// largest gap of `V` below `B'`, or else its mirror image) and falls back to
/// the other side if that walk stalls. Inputs that already intersect are
/// returned as `Q = P`.
pub fn criss_cross(values: &ValueSet, p: &Multiset, p2: &Multiset) -> Result<CrissCross> {
    let ctx = pair_context(values, p, p2)?;
    if p.intersects(p2) {
        return Ok(CrissCross {
            meeting: Meeting::immediate(p),
            side: None,
            fell_back: false,
            rounds: Vec::new(),
        });
    }
    let (lo, hi) = extremes(p, p2);
    if !(p.contains(lo) && p2.contains(hi)) {
        return Err(Error::precondition(format!(
            "need min(P + P') = {lo} in P = {p} and max(P + P') = {hi} in P' = {p2}"
        )));
    }

    let state = criss_cross_split(p, p2)?;
    let b_max = state.b.greatest().expect("q > r + s ≥ 2");
    let bp_min = state.b_prime.least().expect("q > r + s ≥ 2");
    let direct_first = state.y.len() as i64 > values.largest_gap_below(bp_min);
    let reflected_ok = state.y_prime.len() as i64 > values.largest_gap_above(b_max);
    let order = if direct_first || !reflected_ok {
        [Side::Direct, Side::Reflected]
    } else {
        [Side::Reflected, Side::Direct]
    };

    let mut failures = Vec::new();
    for (attempt, side) in order.into_iter().enumerate() {
        let outcome = match side {
            Side::Direct => criss_cross_walk(values, &ctx, p, p2)?,
            Side::Reflected => {
                let mirrored = values.reflect()?;
                let (rp, rp2) = (p2.negate()?, p.negate()?);
                let rctx = Context {
                    profile: ctx.profile.clone(),
                    bidegree: rp.bidegree()?,
                };
                match criss_cross_walk(&mirrored, &rctx, &rp, &rp2)? {
                    Ok((meeting, rounds)) => Ok((unreflect(meeting)?, rounds)),
                    Err(e) => Err(e),
                }
            }
        };
        match outcome {
            Ok((meeting, rounds)) => {
                return Ok(CrissCross {
                    meeting,
                    side: Some(side),
                    fell_back: attempt > 0,
                    rounds,
                })
            }
            Err(why) => failures.push(format!("{side:?}: {why}")),
        }
    }
    Err(Error::invariant(
        "criss-cross",
        format!("both sides stalled for P = {p}, P' = {p2}: {}", failures.join("; ")),
    ))
}

// The reflected walk starts from -P' and meets -P; map it back so that the
// chain starts at P' and the origin points at the second input.
fn unreflect(meeting: Meeting) -> Result<Meeting> {
    Ok(Meeting {
        q: meeting.q.negate()?,
        chain: meeting
            .chain
            .iter()
            .map(Multiset::negate)
            .collect::<Result<_>>()?,
        origin: Origin::Second,
    })
}

type WalkOutcome = std::result::Result<(Meeting, Vec<CrissCrossRound>), String>;

/// The criss-cross walk on the `Y` side. Returns `Ok(Err(reason))` when the
/// walk stalls, which the caller treats as "try the other side".
fn criss_cross_walk(
    values: &ValueSet,
    ctx: &Context,
    p: &Multiset,
    p2: &Multiset,
) -> Result<WalkOutcome> {
    let start = criss_cross_split(p, p2)?;
    let (f, f_prime) = (start.f, start.f_prime);
    let b_prime = start.b_prime.clone();
    let bp_min = b_prime.least().expect("non-empty");

    let y_len = start.y.len() as i128;
    let t = y_len * (y_len + 1) / 2;
    let m_tilde_span = t * (f_prime as i128 - bp_min as i128) + 1;
    let q = ctx.bidegree.q as i128;
    let width = ctx.profile.bound() as i128;
    let cap = cap_from((values.len() as i128 * q * width * width).max(m_tilde_span));

    let mut chain = vec![p.clone()];
    let mut rounds: Vec<CrissCrossRound> = Vec::new();
    let mut state = start;
    loop {
        if rounds.len() >= cap {
            return Ok(Err(format!("no meeting after {cap} rounds")));
        }
        let (steps, offsets, repeat) = match criss_cross_round(values, &state)? {
            Ok(run) => run,
            Err(why) => return Ok(Err(why)),
        };
        let new_b = replay(&state.b, &steps[repeat.0..repeat.1])?;
        if new_b == state.b {
            return Ok(Err(format!("round left B = {} unchanged", state.b)));
        }
        if new_b.sum()? != state.b.sum()? {
            return Err(Error::invariant(
                "criss-cross",
                format!("replay changed the sum of B = {}", state.b),
            ));
        }
        let member = new_b.add(&Multiset::of(&[f]));
        rounds.push(CrissCrossRound {
            state: state.clone(),
            steps,
            offsets,
            repeat,
            result: member.clone(),
        });
        chain.push(member.clone());
        if member.intersects(p2) {
            return Ok(Ok((
                Meeting {
                    q: member,
                    chain,
                    origin: Origin::First,
                },
                rounds,
            )));
        }
        let next = split_state(f, f_prime, &new_b, &b_prime)?;
        if next.x.len() != state.x.len() {
            return Ok(Err(format!(
                "split changed size without meeting P': |X| {} -> {}",
                state.x.len(),
                next.x.len()
            )));
        }
        let (before, after) = (state.y.m_tilde()?, next.y.m_tilde()?);
        if after >= before {
            return Ok(Err(format!("m̃(Y) did not decrease ({before} -> {after})")));
        }
        state = next;
    }
}

type RoundRun = (Vec<Jump>, Vec<i64>, (usize, usize));

/// Inner loop of one criss-cross round: jump until an offset repeats.
fn criss_cross_round(
    values: &ValueSet,
    state: &CrissCrossState,
) -> Result<std::result::Result<RoundRun, String>> {
    let mut active_x = state.x.clone();
    let mut active_y = state.y.clone();
    let mut steps = Vec::new();
    let mut offsets = vec![0i64];
    let mut seen: HashMap<i64, usize> = HashMap::from([(0, 0)]);
    loop {
        let i = offsets.len();
        let prev = offsets[i - 1];
        let (from, to, direction) = if prev <= 0 {
            let Some(x) = active_x.pop_max().or_else(|| active_y.pop_max()) else {
                return Ok(Err(format!("both pools empty at step {i} (offsets {offsets:?})")));
            };
            let Some(to) = values.next_above(x)? else {
                return Ok(Err(format!("{x} has no successor in V")));
            };
            (x, to, Direction::Up)
        } else {
            let Some(x) = active_y.pop_min() else {
                return Ok(Err(format!("Y pool empty at step {i} (offsets {offsets:?})")));
            };
            let Some(to) = values.next_below(x)? else {
                return Ok(Err(format!("{x} has no predecessor in V")));
            };
            (x, to, Direction::Down)
        };
        let offset = checked_offset(prev, from, to)?;
        steps.push(Jump {
            from,
            to,
            direction,
            offset,
        });
        offsets.push(offset);
        if let Some(&j) = seen.get(&offset) {
            return Ok(Ok((steps, offsets, (j, i))));
        }
        seen.insert(offset, i);
    }
}

/// Checks a [`Meeting`] produced for inputs `p` (first) and `p2` (second).
pub fn check_meeting(values: &ValueSet, p: &Multiset, p2: &Multiset, meeting: &Meeting) -> bool {
    let Ok(bidegree) = p.bidegree() else {
        return false;
    };
    let in_pi = |m: &Multiset| m.supported_in(values) && m.bidegree().ok() == Some(bidegree);
    let start = match meeting.origin {
        Origin::First => p,
        Origin::Second => p2,
    };
    in_pi(&meeting.q)
        && meeting.q.intersects(p)
        && meeting.q.intersects(p2)
        && meeting.chain.first() == Some(start)
        && meeting.chain.last() == Some(&meeting.q)
        && meeting.chain.iter().all(in_pi)
        && meeting.chain.windows(2).all(|w| w[0].intersects(&w[1]))
}

/// Independent certificate check: members lie in `Π(q,c)`, consecutive members
/// intersect, and the ends contain `x` and `y`.
pub fn verify_certificate(values: &ValueSet, cert: &WalkCertificate) -> bool {
    let (Some(first), Some(last)) = (cert.chain.first(), cert.chain.last()) else {
        return false;
    };
    let in_pi = |m: &Multiset| {
        m.supported_in(values)
            && m.items().windows(2).all(|w| w[0] <= w[1])
            && m.bidegree().ok() == Some(cert.bidegree)
    };
    cert.chain.iter().all(in_pi)
        && cert.chain.windows(2).all(|w| w[0].intersects(&w[1]))
        && first.contains(cert.x)
        && last.contains(cert.y)
}

/// A certificate that `x` and `y` lie in one component of `Δ(q,c)`.
pub fn connect(values: &ValueSet, q: usize, c: i64, x: i64, y: i64) -> Result<WalkCertificate> {
    let profile = values.gap_profile()?;
    if q as i64 <= profile.bound() {
        return Err(Error::precondition(format!(
            "q = {q} does not exceed r + s = {}",
            profile.bound()
        )));
    }
    let family = enumerate_pi(values, q, c)?;
    connect_in(&family, x, y)
}

/// [`connect`] on an already enumerated family.
pub fn connect_in(family: &PiFamily, x: i64, y: i64) -> Result<WalkCertificate> {
    let values = &family.values;
    let holding = |v: i64| {
        family
            .members
            .iter()
            .find(|m| m.contains(v))
            .cloned()
            .ok_or_else(|| {
                Error::precondition(format!("{v} is not a vertex of Δ{}", family.bidegree))
            })
    };
    let p = holding(x)?;
    let p2 = holding(y)?;

    let chain = if p == p2 {
        vec![p]
    } else if p.intersects(&p2) {
        vec![p, p2]
    } else {
        let lo_in_p = p.least() < p2.least();
        let hi_in_p = p.greatest() > p2.greatest();
        match (lo_in_p, hi_in_p) {
            (false, false) => {
                let m = multiple_expansion(values, &p, &p2, x)?;
                forward(m.chain, &p2)
            }
            (true, true) => {
                let m = multiple_expansion(values, &p2, &p, y)?;
                backward(&p, m.chain)
            }
            (true, false) => {
                let m = criss_cross(values, &p, &p2)?.meeting;
                match m.origin {
                    Origin::First => forward(m.chain, &p2),
                    Origin::Second => backward(&p, m.chain),
                }
            }
            (false, true) => {
                let m = criss_cross(values, &p2, &p)?.meeting;
                match m.origin {
                    Origin::First => backward(&p, m.chain),
                    Origin::Second => forward(m.chain, &p2),
                }
            }
        }
    };

    let mut chain = chain;
    chain.dedup();
    let cert = WalkCertificate {
        x,
        y,
        bidegree: family.bidegree,
        chain,
    };
    if !verify_certificate(values, &cert) {
        return Err(Error::invariant("connect", format!("emitted invalid certificate {cert}")));
    }
    Ok(cert)
}

// chain runs from the x-side to Q; close it with the y-side member
fn forward(mut chain: Vec<Multiset>, end: &Multiset) -> Vec<Multiset> {
    chain.push(end.clone());
    chain
}

// chain runs from the y-side to Q; reverse it behind the x-side member
fn backward(start: &Multiset, chain: Vec<Multiset>) -> Vec<Multiset> {
    std::iter::once(start.clone())
        .chain(chain.into_iter().rev())
        .collect()
}
