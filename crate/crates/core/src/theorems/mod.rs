//! Direct checkers for the rough-convergence theorems.
//!
//! Each checker takes one concrete instance, decides whether the theorem's
//! hypotheses hold, and if so whether its conclusion does. Instances whose
//! hypotheses fail are reported as vacuous (`hypotheses_met = false`,
//! `holds = true`). Every verdict carries a JSON witness with the space,
//! the sequences and the intermediate quantities, so a failure can be
//! replayed from the report alone.
//!
//! Bounds are checked exactly as stated even where they are loose; the
//! ratio of the achieved value to the bound is recorded as `tightness`.

mod search;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::pmspace::{PointSet, Space};
use crate::rational::Rational;
use crate::seqlab::{
    classical_limits, cluster_points, converges_to, is_bounded_sequence, is_r_convergent,
    minimal_roughness, pair_profile, real_right_roughness, rough_limit_set, sequence_sup, Sequence,
    Side,
};
use crate::topo::{generate_topology_capped, topology_cap};

pub use search::{
    search, search_with, summarize, Counts, Execution, SearchConfig, SearchFailure, SearchReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    /// diam(LIM^r) <= 2r + 2a when every self-distance equals a.
    #[serde(rename = "T_DIAM")]
    Diam,
    /// Convergent iff convergent from the right and from the left.
    #[serde(rename = "T_SIDES_CONV")]
    SidesConv,
    /// r-convergent iff r-convergent from both sides.
    #[serde(rename = "T_SIDES_ROUGH")]
    SidesRough,
    /// x_n → x implies {y in closed ball(x, r) : p(y,y) = p(x,x)} ⊆ R-LIM^r.
    #[serde(rename = "T_BALL_RLIM")]
    BallRlim,
    /// R-LIM^r is closed in τ(p).
    #[serde(rename = "T_RLIM_CLOSED")]
    RlimClosed,
    /// Limits of sequences inside R-LIM^r (or LIM^r) lie in R-LIM^r.
    #[serde(rename = "T_LIMIT_IN_RLIM")]
    LimitInRlim,
    /// r-convergent sequences are bounded.
    #[serde(rename = "T_BOUNDED")]
    Bounded,
    /// Bounded by M: right roughness 4M and left roughness 2M toward any term.
    #[serde(rename = "T_4M2M")]
    FourMTwoM,
    /// LIM^r of a sequence is contained in LIM^r of each subsequence.
    #[serde(rename = "T_SUBSEQ")]
    Subseq,
    /// p(x_n, y_n) → 0 and p(x_n, x_n) → 0 transfer r-convergence as right r-convergence.
    #[serde(rename = "T_PAIRED")]
    Paired,
    /// p(x_n, y_n) → 0 and p(x_n, x_n) <= c give right (r + c)-convergence.
    #[serde(rename = "T_PAIRED_CONST")]
    PairedConst,
    /// p(x_n, y_n) right 2r-converges to p(x, y).
    #[serde(rename = "T_PRODUCT_2R")]
    Product2r,
    /// LIM^r ⊆ closed ball(c, r) for a cluster point c, under constant self-distance.
    #[serde(rename = "T_CLUSTER_BALL")]
    ClusterBall,
}

impl TheoremId {
    pub const ALL: [TheoremId; 13] = [
        TheoremId::Diam,
        TheoremId::SidesConv,
        TheoremId::SidesRough,
        TheoremId::BallRlim,
        TheoremId::RlimClosed,
        TheoremId::LimitInRlim,
        TheoremId::Bounded,
        TheoremId::FourMTwoM,
        TheoremId::Subseq,
        TheoremId::Paired,
        TheoremId::PairedConst,
        TheoremId::Product2r,
        TheoremId::ClusterBall,
    ];

    pub fn code(self) -> &'static str {
        match self {
            TheoremId::Diam => "T_DIAM",
            TheoremId::SidesConv => "T_SIDES_CONV",
            TheoremId::SidesRough => "T_SIDES_ROUGH",
            TheoremId::BallRlim => "T_BALL_RLIM",
            TheoremId::RlimClosed => "T_RLIM_CLOSED",
            TheoremId::LimitInRlim => "T_LIMIT_IN_RLIM",
            TheoremId::Bounded => "T_BOUNDED",
            TheoremId::FourMTwoM => "T_4M2M",
            TheoremId::Subseq => "T_SUBSEQ",
            TheoremId::Paired => "T_PAIRED",
            TheoremId::PairedConst => "T_PAIRED_CONST",
            TheoremId::Product2r => "T_PRODUCT_2R",
            TheoremId::ClusterBall => "T_CLUSTER_BALL",
        }
    }

    /// The two paired-sequence theorems, whose hypotheses force zero
    /// self-distances along the sequence.
    pub fn is_paired(self) -> bool {
        matches!(self, TheoremId::Paired | TheoremId::PairedConst)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Vacuous,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub theorem_id: TheoremId,
    pub holds: bool,
    pub hypotheses_met: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    /// Achieved value over the stated bound, for the bound-type theorems.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tightness: Option<Rational>,
    pub witness: Value,
}

impl TheoremVerdict {
    fn vacuous(theorem_id: TheoremId, witness: Value) -> Self {
        TheoremVerdict {
            theorem_id,
            holds: true,
            hypotheses_met: false,
            skipped: false,
            tightness: None,
            witness,
        }
    }

    fn decided(theorem_id: TheoremId, holds: bool, witness: Value) -> Self {
        TheoremVerdict {
            theorem_id,
            holds,
            hypotheses_met: true,
            skipped: false,
            tightness: None,
            witness,
        }
    }

    fn skipped(theorem_id: TheoremId, witness: Value) -> Self {
        TheoremVerdict {
            skipped: true,
            ..TheoremVerdict::vacuous(theorem_id, witness)
        }
    }

    fn with_tightness(mut self, achieved: &Rational, bound: &Rational) -> Self {
        if bound.is_positive() {
            self.tightness = Some(achieved / bound);
        }
        self
    }

    pub fn outcome(&self) -> Outcome {
        match (self.skipped, self.hypotheses_met, self.holds) {
            (true, _, _) => Outcome::Skipped,
            (false, false, _) => Outcome::Vacuous,
            (false, true, true) => Outcome::Pass,
            (false, true, false) => Outcome::Fail,
        }
    }
}

fn labels(space: &Space, set: &PointSet) -> Value {
    json!(space.labels_of(set))
}

fn seq_json(seq: &Sequence) -> Value {
    serde_json::to_value(seq).expect("sequence serialization cannot fail")
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn require_nonnegative(r: &Rational) -> Result<()> {
    if r.is_negative() {
        Err(Error::domain(format!(
            "roughness degree must be nonnegative, got {r}"
        )))
    } else {
        Ok(())
    }
}

/// Diameter bound `diam(LIM^r) <= 2r + 2a` in a space with constant self-distance `a`.
///
/// Non-vacuous when the self-distance is constant and `LIM^r` is nonempty.
/// A singleton limit set has diameter `a`, so it satisfies the bound.
pub fn check_diameter_bound(space: &Space, seq: &Sequence, r: &Rational) -> Result<TheoremVerdict> {
    let lim = rough_limit_set(space, seq, r, Side::TwoSided)?;
    let base = json!({
        "space": space.to_value(),
        "sequence": seq_json(seq),
        "r": r,
        "limit_set": labels(space, &lim),
    });
    let Some(a) = space.self_distance_summary().constant else {
        return Ok(TheoremVerdict::vacuous(
            TheoremId::Diam,
            merge(base, json!({"reason": "self-distance is not constant"})),
        ));
    };
    if lim.is_empty() {
        return Ok(TheoremVerdict::vacuous(
            TheoremId::Diam,
            merge(base, json!({"reason": "sequence is not r-convergent"})),
        ));
    }
    let diam = space.diameter(&lim)?;
    let two = Rational::from(2);
    let bound = &two * r + &two * &a;
    let witness = merge(base, json!({"a": a, "diameter": diam, "bound": bound}));
    Ok(
        TheoremVerdict::decided(TheoremId::Diam, diam <= bound, witness)
            .with_tightness(&diam, &bound),
    )
}

/// Classical convergence agrees with convergence from both sides (r = 0).
/// The two routes are independent: profile equality against one-sided
/// roughness degrees.
pub fn check_sides_classical(space: &Space, seq: &Sequence, x: usize) -> Result<TheoremVerdict> {
    let zero = Rational::zero();
    let conv = converges_to(space, seq, x)?;
    let right = is_r_convergent(space, seq, x, &zero, Side::Right)?;
    let left = is_r_convergent(space, seq, x, &zero, Side::Left)?;
    let witness = json!({
        "space": space.to_value(),
        "sequence": seq_json(seq),
        "candidate": space.label(x),
        "convergent": conv,
        "from_right": right,
        "from_left": left,
    });
    Ok(TheoremVerdict::decided(
        TheoremId::SidesConv,
        conv == (right && left),
        witness,
    ))
}

/// r-convergence agrees with r-convergence from both sides, at `r` and at 0.
pub fn check_sidedness(
    space: &Space,
    seq: &Sequence,
    x: usize,
    r: &Rational,
) -> Result<TheoremVerdict> {
    require_nonnegative(r)?;
    let decide = |r: &Rational| -> Result<(bool, bool, bool)> {
        Ok((
            is_r_convergent(space, seq, x, r, Side::TwoSided)?,
            is_r_convergent(space, seq, x, r, Side::Right)?,
            is_r_convergent(space, seq, x, r, Side::Left)?,
        ))
    };
    let (two, right, left) = decide(r)?;
    let (two0, right0, left0) = decide(&Rational::zero())?;
    let witness = json!({
        "space": space.to_value(),
        "sequence": seq_json(seq),
        "candidate": space.label(x),
        "r": r,
        "r_two": minimal_roughness(space, seq, x, Side::TwoSided)?,
        "r_right": minimal_roughness(space, seq, x, Side::Right)?,
        "r_left": minimal_roughness(space, seq, x, Side::Left)?,
        "at_r": [two, right, left],
        "at_zero": [two0, right0, left0],
    });
    let holds = two == (right && left) && two0 == (right0 && left0);
    Ok(TheoremVerdict::decided(
        TheoremId::SidesRough,
        holds,
        witness,
    ))
}

/// If `seq` converges to `x`, every `y` in the closed ball of radius `r`
/// around `x` with `p(y,y) = p(x,x)` is a right r-limit point.
pub fn check_ball_in_rlim(
    space: &Space,
    seq: &Sequence,
    x: usize,
    r: &Rational,
) -> Result<TheoremVerdict> {
    require_nonnegative(r)?;
    let base = json!({
        "space": space.to_value(),
        "sequence": seq_json(seq),
        "center": space.label(x),
        "r": r,
    });
    if !converges_to(space, seq, x)? {
        return Ok(TheoremVerdict::vacuous(
            TheoremId::BallRlim,
            merge(
                base,
                json!({"reason": "sequence does not converge to the center"}),
            ),
        ));
    }
    let ball = space.closed_ball(x, r)?;
    let eligible: PointSet = ball
        .iter()
        .copied()
        .filter(|&y| space.self_distance(y) == space.self_distance(x))
        .collect();
    let rlim = rough_limit_set(space, seq, r, Side::Right)?;
    let witness = merge(
        base,
        json!({
            "closed_ball": labels(space, &ball),
            "equal_self_distance": labels(space, &eligible),
            "right_limit_set": labels(space, &rlim),
        }),
    );
    Ok(TheoremVerdict::decided(
        TheoremId::BallRlim,
        eligible.is_subset(&rlim),
        witness,
    ))
}

/// `R-LIM^r` is closed in τ(p); topology cap from `ROUGHLIM_TOPO_CAP`.
pub fn check_rlim_closed(space: &Space, seq: &Sequence, r: &Rational) -> Result<TheoremVerdict> {
    check_rlim_closed_capped(space, seq, r, topology_cap()?)
}

/// Non-vacuous when `R-LIM^r` is nonempty; skipped above the carrier cap.
pub fn check_rlim_closed_capped(
    space: &Space,
    seq: &Sequence,
    r: &Rational,
    cap: usize,
) -> Result<TheoremVerdict> {
    let rlim = rough_limit_set(space, seq, r, Side::Right)?;
    let base = json!({
        "space": space.to_value(),
        "sequence": seq_json(seq),
        "r": r,
        "right_limit_set": labels(space, &rlim),
    });
    let topology = match generate_topology_capped(space, cap) {
        Ok(t) => t,
        Err(Error::TopologyCap { points, cap }) => {
            return Ok(TheoremVerdict::skipped(
                TheoremId::RlimClosed,
                merge(
                    base,
                    json!({"reason": format!("carrier of {points} points exceeds topology cap {cap}")}),
                ),
            ))
        }
        Err(e) => return Err(e),
    };
    if rlim.is_empty() {
        return Ok(TheoremVerdict::vacuous(
            TheoremId::RlimClosed,
            merge(
                base,
                json!({"reason": "sequence is not r-convergent from the right"}),
            ),
        ));
    }
    let closure = topology.closure(&rlim)?;
    let witness = merge(base, json!({"closure": labels(space, &closure)}));
    Ok(TheoremVerdict::decided(
        TheoremId::RlimClosed,
        topology.is_closed(&rlim)?,
        witness,
    ))
}

/// A probe sequence with every term in `R-LIM^r` (or in `LIM^r`) that
/// converges to `y` must have `y ∈ R-LIM^r`. All classical limits of the
/// probe are checked.
pub fn check_limit_in_rlim(
    space: &Space,
    seq: &Sequence,
    r: &Rational,
    probe: &Sequence,
) -> Result<TheoremVerdict> {
    let rlim = rough_limit_set(space, seq, r, Side::Right)?;
    let lim = rough_limit_set(space, seq, r, Side::TwoSided)?;
    let limits = classical_limits(space, probe)?;
    let in_rlim = probe.terms().all(|t| rlim.contains(&t));
    let in_lim = probe.terms().all(|t| lim.contains(&t));
    let witness = json!({
        "space": space.to_value(),
        "sequence": seq_json(seq),
        "probe": seq_json(probe),
        "r": r,
        "right_limit_set": labels(space, &rlim),
        "limit_set": labels(space, &lim),
        "probe_limits": labels(space, &limits),
        "probe_in_right_limit_set": in_rlim,
        "probe_in_limit_set": in_lim,
    });
    if limits.is_empty() || !(in_rlim || in_lim) {
        return Ok(TheoremVerdict::vacuous(TheoremId::LimitInRlim, witness));
    }
    Ok(TheoremVerdict::decided(
        TheoremId::LimitInRlim,
        limits.is_subset(&rlim),
        witness,
    ))
}

/// An r-convergent sequence is bounded: `sup p(x_n, x_m)` is finite and
/// strictly below `sup + 1`.
pub fn check_bounded(
    space: &Space,
    seq: &Sequence,
    x: usize,
    r: &Rational,
) -> Result<TheoremVerdict> {
    let base = json!({
        "space": space.to_value(),
        "sequence": seq_json(seq),
        "candidate": space.label(x),
        "r": r,
    });
    if !is_r_convergent(space, seq, x, r, Side::TwoSided)? {
        return Ok(TheoremVerdict::vacuous(TheoremId::Bounded, base));
    }
    let sup = sequence_sup(space, seq)?;
    let m = &sup + &Rational::one();
    let holds = is_bounded_sequence(space, seq, &m)?;
    let witness = merge(base, json!({"sup": sup, "bound": m}));
    Ok(TheoremVerdict::decided(TheoremId::Bounded, holds, witness))
}

/// A sequence bounded by `m` right-converges with degree `4m` and
/// left-converges with degree `2m` toward its term `x_{k_probe}` (0-based).
pub fn check_4m_2m(
    space: &Space,
    seq: &Sequence,
    m: &Rational,
    k_probe: usize,
) -> Result<TheoremVerdict> {
    if !m.is_positive() {
        return Err(Error::domain(format!("bound M must be positive, got {m}")));
    }
    let probe = seq.term(k_probe);
    let base = json!({
        "space": space.to_value(),
        "sequence": seq_json(seq),
        "m": m,
        "k_probe": k_probe,
        "probe": space.label(probe),
        "sup": sequence_sup(space, seq)?,
    });
    if !is_bounded_sequence(space, seq, m)? {
        return Ok(TheoremVerdict::vacuous(TheoremId::FourMTwoM, base));
    }
    let right = minimal_roughness(space, seq, probe, Side::Right)?;
    let left = minimal_roughness(space, seq, probe, Side::Left)?;
    let four_m = &Rational::from(4) * m;
    let two_m = &Rational::from(2) * m;
    let holds = right <= four_m && left <= two_m;
    let ratio = (&right / &four_m).max(&left / &two_m);
    let witness = merge(
        base,
        json!({"r_right": right, "r_left": left, "right_bound": four_m, "left_bound": two_m}),
    );
    let mut verdict = TheoremVerdict::decided(TheoremId::FourMTwoM, holds, witness);
    verdict.tightness = Some(ratio);
    Ok(verdict)
}

/// `LIM^r x_n ⊆ LIM^r x_{offset + k·step}`; non-vacuous when `LIM^r` is nonempty.
pub fn check_subsequence(
    space: &Space,
    seq: &Sequence,
    r: &Rational,
    offset: usize,
    step: usize,
) -> Result<TheoremVerdict> {
    let sub = seq.arithmetic_subsequence(offset, step)?;
    let lim = rough_limit_set(space, seq, r, Side::TwoSided)?;
    let lim_sub = rough_limit_set(space, &sub, r, Side::TwoSided)?;
    let witness = json!({
        "space": space.to_value(),
        "sequence": seq_json(seq),
        "subsequence": seq_json(&sub),
        "offset": offset,
        "step": step,
        "r": r,
        "limit_set": labels(space, &lim),
        "subsequence_limit_set": labels(space, &lim_sub),
    });
    if lim.is_empty() {
        return Ok(TheoremVerdict::vacuous(TheoremId::Subseq, witness));
    }
    Ok(TheoremVerdict::decided(
        TheoremId::Subseq,
        lim.is_subset(&lim_sub),
        witness,
    ))
}

/// Hypothesis variants of the paired-sequence theorems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairedVariant {
    /// `p(x_n, y_n) → 0` and the self-distances of the converging sequence
    /// tend to 0; both directions are checked.
    Vanishing,
    /// `p(x_n, y_n) → 0`, `p(x_n, x_n) <= c`: `x_n` r-convergent gives `y_n` right (r + c)-convergent.
    ConstantC(Rational),
    /// `p(x_n, y_n) → 0`, `p(y_n, y_n) <= d`: `y_n` r-convergent gives `x_n` right (r + d)-convergent.
    ConstantD(Rational),
}

struct Direction {
    hypotheses: bool,
    degree: Rational,
    bound: Rational,
}

/// Paired-sequence transfer of rough convergence.
///
/// In the finite model "`p(x_n, y_n) <= ε` eventually, for every ε" means
/// every cycle value of `p(x_n, y_n)` is zero, which p1 only allows at
/// points of zero self-distance.
pub fn check_paired(
    space: &Space,
    seq_x: &Sequence,
    seq_y: &Sequence,
    x: usize,
    r: &Rational,
    variant: &PairedVariant,
) -> Result<TheoremVerdict> {
    require_nonnegative(r)?;
    space.check_point(x)?;
    let pair = pair_profile(space, seq_x, seq_y)?;
    let vanishes = pair.cycle_vals().iter().all(Rational::is_zero);
    let self_x = pair_profile(space, seq_x, seq_x)?;
    let self_y = pair_profile(space, seq_y, seq_y)?;

    // hypotheses on `from`, conclusion about `to`, with slack added to r
    let direction =
        |from: &Sequence, to: &Sequence, self_ok: bool, slack: &Rational| -> Result<Direction> {
            Ok(Direction {
                hypotheses: vanishes
                    && self_ok
                    && is_r_convergent(space, from, x, r, Side::TwoSided)?,
                degree: minimal_roughness(space, to, x, Side::Right)?,
                bound: r + slack,
            })
        };
    let zero = Rational::zero();
    let (theorem_id, directions) = match variant {
        PairedVariant::Vanishing => (
            TheoremId::Paired,
            vec![
                direction(seq_x, seq_y, self_x.limsup().is_zero(), &zero)?,
                direction(seq_y, seq_x, self_y.limsup().is_zero(), &zero)?,
            ],
        ),
        PairedVariant::ConstantC(c) | PairedVariant::ConstantD(c) if !c.is_positive() => {
            return Err(Error::domain(format!(
                "self-distance bound must be positive, got {c}"
            )))
        }
        PairedVariant::ConstantC(c) => (
            TheoremId::PairedConst,
            vec![direction(seq_x, seq_y, self_x.limsup() <= c, c)?],
        ),
        PairedVariant::ConstantD(d) => (
            TheoremId::PairedConst,
            vec![direction(seq_y, seq_x, self_y.limsup() <= d, d)?],
        ),
    };
    let variant_json = match variant {
        PairedVariant::Vanishing => json!("vanishing"),
        PairedVariant::ConstantC(c) => json!({"constant_c": c}),
        PairedVariant::ConstantD(d) => json!({"constant_d": d}),
    };
    let witness = json!({
        "space": space.to_value(),
        "seq_x": seq_json(seq_x),
        "seq_y": seq_json(seq_y),
        "candidate": space.label(x),
        "r": r,
        "variant": variant_json,
        "pair_cycle": pair.cycle_vals(),
        "directions": directions.iter().map(|d| json!({
            "hypotheses": d.hypotheses,
            "right_degree": d.degree,
            "bound": d.bound,
        })).collect::<Vec<_>>(),
    });
    if directions.iter().all(|d| !d.hypotheses) {
        return Ok(TheoremVerdict::vacuous(theorem_id, witness));
    }
    let holds = directions
        .iter()
        .filter(|d| d.hypotheses)
        .all(|d| d.degree <= d.bound);
    Ok(TheoremVerdict::decided(theorem_id, holds, witness))
}

/// `x_n` r-converging to `x` and `y_n` to `y` make `p(x_n, y_n)` right
/// 2r-convergent to `p(x, y)`.
pub fn check_product_2r(
    space: &Space,
    seq_x: &Sequence,
    seq_y: &Sequence,
    x: usize,
    y: usize,
    r: &Rational,
) -> Result<TheoremVerdict> {
    space.check_point(y)?;
    let base = json!({
        "space": space.to_value(),
        "seq_x": seq_json(seq_x),
        "seq_y": seq_json(seq_y),
        "x": space.label(x),
        "y": space.label(y),
        "r": r,
    });
    let hypotheses = is_r_convergent(space, seq_x, x, r, Side::TwoSided)?
        && is_r_convergent(space, seq_y, y, r, Side::TwoSided)?;
    if !hypotheses {
        return Ok(TheoremVerdict::vacuous(TheoremId::Product2r, base));
    }
    let pair = pair_profile(space, seq_x, seq_y)?;
    let degree = real_right_roughness(&pair, space.p(x, y));
    let bound = &Rational::from(2) * r;
    let witness = merge(
        base,
        json!({"pair_cycle": pair.cycle_vals(), "target": space.p(x, y), "right_degree": degree, "bound": bound}),
    );
    Ok(
        TheoremVerdict::decided(TheoremId::Product2r, degree <= bound, witness)
            .with_tightness(&degree, &bound),
    )
}

/// `LIM^r ⊆ closed_ball(c, r)` for a cluster point `c` under constant
/// self-distance. Non-vacuous only when `LIM^r` is nonempty as well.
pub fn check_cluster_ball(
    space: &Space,
    seq: &Sequence,
    c: usize,
    r: &Rational,
) -> Result<TheoremVerdict> {
    require_nonnegative(r)?;
    let clusters = cluster_points(space, seq)?;
    let lim = rough_limit_set(space, seq, r, Side::TwoSided)?;
    let ball = space.closed_ball(c, r)?;
    let witness = json!({
        "space": space.to_value(),
        "sequence": seq_json(seq),
        "cluster_point": space.label(c),
        "r": r,
        "cluster_points": labels(space, &clusters),
        "limit_set": labels(space, &lim),
        "closed_ball": labels(space, &ball),
    });
    let constant = space.self_distance_summary().constant.is_some();
    if !constant || !clusters.contains(&c) || lim.is_empty() {
        return Ok(TheoremVerdict::vacuous(TheoremId::ClusterBall, witness));
    }
    Ok(TheoremVerdict::decided(
        TheoremId::ClusterBall,
        lim.is_subset(&ball),
        witness,
    ))
}

/// Runs every checker on one instance, sweeping candidates, probes and
/// subsequences exhaustively. `partner` defaults to `seq` itself.
pub fn check_instance(
    space: &Space,
    seq: &Sequence,
    partner: Option<&Sequence>,
    r: &Rational,
) -> Result<Vec<TheoremVerdict>> {
    require_nonnegative(r)?;
    seq.check_in(space)?;
    let partner = partner.unwrap_or(seq);
    partner.check_in(space)?;
    let points = 0..space.len();
    let mut out = vec![check_diameter_bound(space, seq, r)?];
    for x in points.clone() {
        out.push(check_sides_classical(space, seq, x)?);
        out.push(check_sidedness(space, seq, x, r)?);
        out.push(check_ball_in_rlim(space, seq, x, r)?);
        out.push(check_bounded(space, seq, x, r)?);
    }
    out.push(check_rlim_closed(space, seq, r)?);
    for z in points.clone() {
        out.push(check_limit_in_rlim(space, seq, r, &Sequence::constant(z))?);
    }
    let m = sequence_sup(space, seq)? + Rational::one();
    for k in 0..seq.span() {
        out.push(check_4m_2m(space, seq, &m, k)?);
    }
    for offset in 0..seq.span() {
        for step in 1..=3 {
            out.push(check_subsequence(space, seq, r, offset, step)?);
        }
    }
    let self_max = pair_profile(space, seq, seq)?.limsup().clone();
    let c = if self_max.is_positive() {
        self_max
    } else {
        Rational::one()
    };
    for x in points.clone() {
        out.push(check_paired(
            space,
            seq,
            partner,
            x,
            r,
            &PairedVariant::Vanishing,
        )?);
        out.push(check_paired(
            space,
            seq,
            partner,
            x,
            r,
            &PairedVariant::ConstantC(c.clone()),
        )?);
        out.push(check_paired(
            space,
            seq,
            partner,
            x,
            r,
            &PairedVariant::ConstantD(c.clone()),
        )?);
        for y in points.clone() {
            out.push(check_product_2r(space, seq, partner, x, y, r)?);
        }
    }
    for c in cluster_points(space, seq)? {
        out.push(check_cluster_ball(space, seq, c, r)?);
    }
    Ok(out)
}
