//! Proof quantities and the gated ledger of intermediate bounds.
//!
//! Work happens in the transformed coordinates, where the pointwise
//! hypothesis reads `x_i y_j + y_j z_k + z_k x_i <= 3`. With `n = 2m`, the
//! sequences split into a head (`i < m`) and a tail (`i >= m`), and the
//! bound `n^2 (XY + YZ + ZX) <= 12 m^2` on the averages is assembled from
//! the block sums and the entries at the two anchors `0` and `m`.
//!
//! Each ledger entry is an inequality `lhs <= rhs` evaluated exactly. Entries
//! carry the case condition under which the argument uses them; an entry
//! whose condition holds must hold, and a failing applicable entry is a
//! certificate failure.

use num_traits::Zero;

use super::hypothesis::check_pointwise_hypothesis;
use super::sequences::TransformedSequences;
use crate::rational::{fmt_rational, int, q, Rational};

/// Block sums and anchor forms of transformed sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofQuantities {
    /// Sum of `x_i` over the head `i < m`.
    pub x_head: Rational,
    /// Sum of `x_i` over the tail `m <= i < 2m`.
    pub x_tail: Rational,
    pub y_head: Rational,
    pub y_tail: Rational,
    pub z_head: Rational,
    pub z_tail: Rational,
    /// `x_0 y_0 + y_0 z_0 + z_0 x_0`
    pub head_form: Rational,
    /// `x_m y_m + y_m z_m + z_m x_m`
    pub mid_form: Rational,
    /// `x_m z_0 + y_m z_0 + y_m x_0 + z_m x_0 + x_m y_0 + z_m y_0`
    pub cross_form: Rational,
    /// `rs + st + tr` for the anchor sums below.
    pub anchor_form: Rational,
    /// `x_0 + x_m`
    pub anchor_x: Rational,
    /// `y_0 + y_m`
    pub anchor_y: Rational,
    /// `z_0 + z_m`
    pub anchor_z: Rational,
    /// `x_0 + y_0 - 5(x_m + y_m)`
    pub gap_xy: Rational,
    /// `y_0 + z_0 - 5(y_m + z_m)`
    pub gap_yz: Rational,
    /// `z_0 + x_0 - 5(z_m + x_m)`
    pub gap_zx: Rational,
}

fn pair_form(a: &Rational, b: &Rational, c: &Rational) -> Rational {
    a * b + b * c + c * a
}

pub fn compute_proof_quantities(t: &TransformedSequences) -> ProofQuantities {
    let m = t.m;
    let head = |s: &[Rational]| s[..m].iter().sum::<Rational>();
    let tail = |s: &[Rational]| s[m..].iter().sum::<Rational>();
    let (x0, y0, z0) = (&t.x[0], &t.y[0], &t.z[0]);
    let (xm, ym, zm) = (&t.x[m], &t.y[m], &t.z[m]);
    let anchor_x = x0 + xm;
    let anchor_y = y0 + ym;
    let anchor_z = z0 + zm;
    let five = int(5);
    ProofQuantities {
        x_head: head(&t.x),
        x_tail: tail(&t.x),
        y_head: head(&t.y),
        y_tail: tail(&t.y),
        z_head: head(&t.z),
        z_tail: tail(&t.z),
        head_form: pair_form(x0, y0, z0),
        mid_form: pair_form(xm, ym, zm),
        cross_form: xm * z0 + ym * z0 + ym * x0 + zm * x0 + xm * y0 + zm * y0,
        anchor_form: pair_form(&anchor_x, &anchor_y, &anchor_z),
        gap_xy: x0 + y0 - &five * (xm + ym),
        gap_yz: y0 + z0 - &five * (ym + zm),
        gap_zx: z0 + x0 - &five * (zm + xm),
        anchor_x,
        anchor_y,
        anchor_z,
    }
}

/// Index triples `(i, j, k)` with `i, j < m <= k < 2m` and
/// `i + j + k = 0 (mod m)`.
pub fn index_set_head_head_tail(m: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let k = m + (2 * m - (i + j) % m) % m;
            out.push((i, j, k));
        }
    }
    out
}

/// Index triples with `m <= i, j, k < 2m` and `i + j + k = 0 (mod m)`.
pub fn index_set_tail(m: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(m * m);
    for i in m..2 * m {
        for j in m..2 * m {
            let k = m + (3 * m - (i + j) % m) % m;
            out.push((i, j, k));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub name: &'static str,
    pub applicable: bool,
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl LedgerEntry {
    fn new(name: &'static str, applicable: bool, lhs: Rational, rhs: Rational) -> Self {
        LedgerEntry {
            name,
            applicable,
            holds: lhs <= rhs,
            lhs,
            rhs,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "applicable": self.applicable,
            "holds": self.holds,
            "lhs": fmt_rational(&self.lhs),
            "rhs": fmt_rational(&self.rhs),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLedger {
    /// Whether the pointwise hypothesis holds. Every entry is marked not
    /// applicable when it does not.
    pub hypothesis_holds: bool,
    pub entries: Vec<LedgerEntry>,
}

impl ProofLedger {
    /// Applicable entries that fail.
    pub fn failures(&self) -> Vec<&LedgerEntry> {
        self.entries
            .iter()
            .filter(|e| e.applicable && !e.holds)
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "hypothesis_holds": self.hypothesis_holds,
            "entries": self.entries.iter().map(LedgerEntry::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Evaluates every intermediate bound of the argument on `t`.
///
/// Unconditional entries apply whenever the pointwise hypothesis holds. The
/// remaining entries apply only inside their case:
///
/// * `negative_anchor_pair*`: some pair of anchor sums has a negative sum.
/// * `all_tails_negative`: anchor pair sums all nonnegative and every tail
///   sum negative.
/// * `two_tails_negative`: exactly two tail sums negative.
/// * `one_tail_negative*`: exactly one tail sum negative and it pairs with
///   another tail sum to a negative total.
/// * `tail_form_cap` and the `*_gaps_negative*` entries: all pairwise tail
///   sums nonnegative, split further by how many of the three gaps are
///   negative.
pub fn verify_proof_inequalities(t: &TransformedSequences) -> ProofLedger {
    let hypothesis_holds = check_pointwise_hypothesis(&t.inverse()).holds;
    let pq = compute_proof_quantities(t);
    let m = t.m;
    let mi = int(m as i64);
    let m2 = &mi * &mi;
    let zero = Rational::zero();
    let (x0, y0, z0) = (&t.x[0], &t.y[0], &t.z[0]);
    let (xm, ym, zm) = (&t.x[m], &t.y[m], &t.z[m]);

    let x_sum = &pq.x_head + &pq.x_tail;
    let y_sum = &pq.y_head + &pq.y_tail;
    let z_sum = &pq.z_head + &pq.z_tail;
    // n^2 (XY + YZ + ZX) with X, Y, Z the averages
    let total = pair_form(&x_sum, &y_sum, &z_sum);
    let tail_form = pair_form(&pq.x_tail, &pq.y_tail, &pq.z_tail);
    let corner_terms = (x0 * y0 + y0 * zm + zm * x0)
        + (x0 * ym + ym * z0 + z0 * x0)
        + (xm * y0 + y0 * z0 + z0 * xm);
    let nine_m2_minus_9 = int(9) * (&m2 - int(1));

    let mut entries = Vec::new();
    let gate = |cond: bool| hypothesis_holds && cond;

    entries.push(LedgerEntry::new(
        "block_expansion",
        gate(true),
        total.clone(),
        &nine_m2_minus_9 + &corner_terms + &tail_form,
    ));
    entries.push(LedgerEntry::new(
        "block_expansion_compact",
        gate(true),
        total.clone(),
        &nine_m2_minus_9 + &pq.anchor_form - &pq.mid_form + &tail_form,
    ));
    entries.push(LedgerEntry::new(
        "mixed_anchor_bound",
        gate(true),
        pq.cross_form.clone(),
        int(9) - &pq.mid_form,
    ));
    entries.push(LedgerEntry::new(
        "head_mid_reduction",
        gate(true),
        total.clone(),
        int(9) * &m2 + &pq.head_form - &pq.mid_form + &tail_form,
    ));
    entries.push(LedgerEntry::new(
        "tail_block_bound",
        gate(true),
        &tail_form - &pq.mid_form,
        int(3) * (&m2 - int(1)),
    ));

    // Some pair of anchor sums negative: U <= (r-2)(s-2) - 4 <= 12.
    let anchors = [&pq.anchor_x, &pq.anchor_y, &pq.anchor_z];
    let negative_pair = (0..3).find(|&p| anchors[p] + anchors[(p + 1) % 3] < zero);
    let (pair_lhs, pair_mid) = match negative_pair {
        Some(p) => {
            let (r, s) = (anchors[p], anchors[(p + 1) % 3]);
            (pq.anchor_form.clone(), (r - int(2)) * (s - int(2)) - int(4))
        }
        None => {
            let (r, s) = (anchors[0], anchors[1]);
            (pq.anchor_form.clone(), (r - int(2)) * (s - int(2)) - int(4))
        }
    };
    entries.push(LedgerEntry::new(
        "negative_anchor_pair",
        gate(negative_pair.is_some()),
        pair_lhs,
        pair_mid.clone(),
    ));
    entries.push(LedgerEntry::new(
        "negative_anchor_pair_cap",
        gate(negative_pair.is_some()),
        pair_mid,
        int(12),
    ));

    let tails = [&pq.x_tail, &pq.y_tail, &pq.z_tail];
    let negative_tails = tails.iter().filter(|v| **v < &zero).count();

    let all_tails_bound = if m == 3 {
        int(3) * &m2 + int(6)
    } else {
        int(3) * &m2 + int(2)
    };
    entries.push(LedgerEntry::new(
        "all_tails_negative",
        gate(negative_pair.is_none() && negative_tails == 3),
        &pq.anchor_form - &pq.mid_form + &tail_form,
        all_tails_bound,
    ));

    entries.push(LedgerEntry::new(
        "two_tails_negative",
        gate(negative_tails == 2),
        &tail_form - &pq.mid_form,
        &m2 - int(1) + q(22, 5),
    ));

    let one_tail_case = negative_tails == 1 && {
        let p = (0..3).find(|&p| tails[p] < &zero).unwrap();
        tails[p] + tails[(p + 1) % 3] < zero || tails[p] + tails[(p + 2) % 3] < zero
    };
    entries.push(LedgerEntry::new(
        "one_tail_negative_form",
        gate(one_tail_case),
        tail_form.clone(),
        zero.clone(),
    ));
    entries.push(LedgerEntry::new(
        "one_tail_negative_total",
        gate(one_tail_case),
        total.clone(),
        int(9) * &m2 + int(5) * q(121, 25),
    ));

    let tails_pairwise_nonnegative = (0..3).all(|p| tails[p] + tails[(p + 1) % 3] >= zero);
    entries.push(LedgerEntry::new(
        "tail_form_cap",
        gate(tails_pairwise_nonnegative),
        tail_form.clone(),
        &m2 * &pq.mid_form,
    ));

    let gaps = [&pq.gap_xy, &pq.gap_yz, &pq.gap_zx];
    let negative_gaps = gaps.iter().filter(|v| **v < &zero).count();
    let in_gap_case = |count: usize| gate(tails_pairwise_nonnegative && negative_gaps == count);

    entries.push(LedgerEntry::new(
        "all_gaps_negative_cross",
        in_gap_case(3),
        &pq.head_form + int(5) * &pq.mid_form,
        int(3) * &pq.cross_form,
    ));
    entries.push(LedgerEntry::new(
        "all_gaps_negative",
        in_gap_case(3),
        &pq.head_form + int(8) * &pq.mid_form,
        int(27),
    ));

    for (count, cross, bound, total_name) in [
        (
            2,
            "two_gaps_negative_cross",
            "two_gaps_negative",
            "two_gaps_negative_total",
        ),
        (
            1,
            "one_gap_negative_cross",
            "one_gap_negative",
            "one_gap_negative_total",
        ),
    ] {
        entries.push(LedgerEntry::new(
            cross,
            in_gap_case(count),
            &pq.head_form + int(25) * &pq.mid_form,
            int(5) * &pq.cross_form,
        ));
        entries.push(LedgerEntry::new(
            bound,
            in_gap_case(count),
            &pq.head_form + int(30) * &pq.mid_form,
            int(45),
        ));
        entries.push(LedgerEntry::new(
            total_name,
            in_gap_case(count),
            &pq.head_form + (&m2 - int(1)) * &pq.mid_form,
            int(3) * &m2,
        ));
    }

    entries.push(LedgerEntry::new(
        "no_gap_negative",
        in_gap_case(0),
        pq.mid_form.clone(),
        int(3) * q(11, 25) * q(11, 25),
    ));

    entries.push(LedgerEntry::new(
        "conclusion",
        gate(true),
        total,
        int(12) * &m2,
    ));

    ProofLedger {
        hypothesis_holds,
        entries,
    }
}
