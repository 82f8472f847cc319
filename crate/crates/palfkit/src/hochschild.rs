//! Hochschild cochain complex, Gerstenhaber operations, differential and
//! cohomology of a finite directed A-infinity category.
//!
//! Cochain generators live on composable sequences of basis morphisms
//! (units allowed; the complex is not reduced) with a basis output morphism.
//! The Hochschild degree of a generator with `s` inputs is
//! `r = s + deg(out) - sum deg(in)`.
//!
//! The differential is the Gerstenhaber bracket with the structure cochain,
//! `M1 = [-, mu]`. The simplified three-term differential, valid when only
//! binary composition is present and all morphism degrees are even, is kept
//! as an independent crosscheck; the two agree up to one global sign, which
//! [`simplified_differential_crosscheck`] detects and records.

use std::collections::BTreeMap;

use crate::ainfcat::{AInfCategory, GenId, LinComb, ObjId};
use crate::exactalg::{ExactMatrix, Field, Subspace};

/// One Hochschild cochain basis generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainGen {
    /// Input morphisms in display order (rightmost is composed first);
    /// empty for length-zero cochains.
    pub inputs: Vec<GenId>,
    /// Base object for length-zero cochains; for positive length it is the
    /// source object of the input chain.
    pub object: ObjId,
    /// Output morphism, a basis generator of hom(X0, Xs).
    pub output: GenId,
    /// Hochschild degree.
    pub degree: i64,
}

impl CochainGen {
    pub fn length(&self) -> usize {
        self.inputs.len()
    }
}

/// Basis of one Hochschild degree, plus a truncation marker when a length
/// cap had to be enforced.
#[derive(Clone, Debug)]
pub struct CcBasis {
    pub degree: i64,
    pub gens: Vec<CochainGen>,
    pub truncated: bool,
    pub length_cap: Option<usize>,
}

/// Object-string label, e.g. `321` for a cochain on the path 1 -> 2 -> 3
/// (object names concatenated target-first, matching the generator tables
/// in the reports).
pub fn object_string<F: Field>(cat: &AInfCategory<F>, g: &CochainGen) -> String {
    if g.inputs.is_empty() {
        return cat.objects()[g.object].clone();
    }
    let mut s = String::new();
    s.push_str(&cat.objects()[cat.gen_info(g.inputs[0]).dst]);
    for &i in &g.inputs {
        s.push_str(&cat.objects()[cat.gen_info(i).src]);
    }
    s
}

/// Whether a length cap is needed at all: with every morphism degree <= 0
/// the chain length is bounded by `r - min_degree` and the enumeration is
/// provably complete.
pub fn needs_length_cap<F: Field>(cat: &AInfCategory<F>) -> bool {
    cat.morphism_gens().any(|g| cat.degree(g) > 0)
}

/// Default cap, engaged only for categories with positive-degree morphisms.
pub fn default_length_cap<F: Field>(cat: &AInfCategory<F>, degree_range: (i64, i64)) -> usize {
    2 * cat.object_count() + (degree_range.1 - degree_range.0).unsigned_abs() as usize
}

/// All cochain generators of the given Hochschild degree, up to the length
/// cap when one is required.
pub fn cc_basis<F: Field>(cat: &AInfCategory<F>, degree: i64, cap: Option<usize>) -> CcBasis {
    let capped = needs_length_cap(cat);
    let min_deg = cat.generators().iter().map(|g| g.degree).min().unwrap_or(0).min(0);
    let max_len = if capped {
        cap.unwrap_or_else(|| default_length_cap(cat, (degree, degree)))
    } else {
        (degree - min_deg).max(0) as usize
    };
    let mut gens = Vec::new();
    // Length zero: one candidate per object, output inside hom(X, X) = k e_X.
    if degree == 0 {
        for obj in 0..cat.object_count() {
            gens.push(CochainGen {
                inputs: Vec::new(),
                object: obj,
                output: cat.unit(obj),
                degree: 0,
            });
        }
    }
    // Positive lengths: composable display-order sequences by left extension.
    let mut chains: Vec<Vec<GenId>> = (0..cat.generators().len()).map(|g| vec![g]).collect();
    for s in 1..=max_len {
        for chain in &chains {
            let (src, dst) = cat.chain_endpoints(chain).expect("built composable");
            let in_sum: i64 = chain.iter().map(|&g| cat.degree(g)).sum();
            let want_out = degree - s as i64 + in_sum;
            for out in cat.hom_gens(src, dst) {
                if cat.degree(out) == want_out {
                    gens.push(CochainGen {
                        inputs: chain.clone(),
                        object: src,
                        output: out,
                        degree,
                    });
                }
            }
        }
        if s == max_len {
            break;
        }
        let mut next = Vec::new();
        for chain in &chains {
            let dst = cat.gen_info(chain[0]).dst;
            for g in 0..cat.generators().len() {
                if cat.gen_info(g).src == dst {
                    let mut c = Vec::with_capacity(chain.len() + 1);
                    c.push(g);
                    c.extend_from_slice(chain);
                    next.push(c);
                }
            }
        }
        chains = next;
    }
    gens.sort_by(|a, b| {
        (a.length(), &a.inputs, a.output, a.object).cmp(&(
            b.length(),
            &b.inputs,
            b.output,
            b.object,
        ))
    });
    CcBasis { degree, gens, truncated: capped, length_cap: capped.then_some(max_len) }
}

/// Object sitting at the junction with `i` arguments to its right in the
/// display-order sequence `seq` (which must be nonempty).
fn junction_object<F: Field>(cat: &AInfCategory<F>, seq: &[GenId], i: usize) -> ObjId {
    let n = seq.len();
    if i == 0 {
        cat.gen_info(seq[n - 1]).src
    } else {
        cat.gen_info(seq[n - i]).dst
    }
}

fn matches_basis(f: &CochainGen, slice: &[GenId], object_if_empty: ObjId) -> bool {
    if f.inputs.len() != slice.len() {
        return false;
    }
    if slice.is_empty() {
        f.object == object_if_empty
    } else {
        f.inputs == slice
    }
}

/// `sum_{1<=j<=i} (|a_j| - 1)` over the rightmost `i` arguments.
fn sign_sum<F: Field>(cat: &AInfCategory<F>, seq: &[GenId], i: usize) -> i64 {
    let n = seq.len();
    (0..i).map(|l| cat.degree(seq[n - 1 - l]) - 1).sum()
}

/// Gerstenhaber product `f * g` of two basis cochains, evaluated on a
/// display-order input sequence; returns a combination of output morphisms.
pub fn gerstenhaber_product_eval<F: Field>(
    cat: &AInfCategory<F>,
    f: &CochainGen,
    g: &CochainGen,
    seq: &[GenId],
) -> LinComb<F> {
    let mut out = LinComb::zero();
    let n = seq.len();
    let sf = f.length();
    let sg = g.length();
    if sf == 0 || n + 1 != sf + sg {
        return out;
    }
    // i = number of arguments strictly right of g's insertion point.
    for i in 0..=(n - sg) {
        let lo = n - i - sg;
        let hi = n - i;
        if sg == 0 && n == 0 {
            continue;
        }
        let obj = if sg == 0 { junction_object(cat, seq, i) } else { 0 };
        if !matches_basis(g, &seq[lo..hi], obj) {
            continue;
        }
        let mut spliced = Vec::with_capacity(sf);
        spliced.extend_from_slice(&seq[..lo]);
        spliced.push(g.output);
        spliced.extend_from_slice(&seq[hi..]);
        if f.inputs != spliced {
            continue;
        }
        let heart = (g.degree - 1) * sign_sum(cat, seq, i);
        let coeff = if heart.rem_euclid(2) == 0 { F::one() } else { F::one().neg() };
        out.add_term(f.output, &coeff);
    }
    out
}

/// `f * mu` evaluated on a sequence: one structure map, its arity forced by
/// the shapes, inserted into each slot of `f`; unit rules included.
fn product_with_mu_right<F: Field>(
    cat: &AInfCategory<F>,
    f: &CochainGen,
    seq: &[GenId],
) -> LinComb<F> {
    let mut out = LinComb::zero();
    let n = seq.len();
    let sf = f.length();
    if sf == 0 || n + 1 < sf {
        return out;
    }
    let j = n + 1 - sf;
    if j == 0 || j > n {
        return out;
    }
    for i in 0..=(n - j) {
        let lo = n - i - j;
        let hi = n - i;
        let inner = cat.mu(&seq[lo..hi]);
        if inner.is_zero() {
            continue;
        }
        let sign = sign_sum(cat, seq, i); // deg(mu) - 1 = 1
        for (&gid, c) in &inner.0 {
            let mut spliced = Vec::with_capacity(sf);
            spliced.extend_from_slice(&seq[..lo]);
            spliced.push(gid);
            spliced.extend_from_slice(&seq[hi..]);
            if f.inputs == spliced {
                let mut coeff = c.clone();
                if sign.rem_euclid(2) == 1 {
                    coeff = coeff.neg();
                }
                out.add_term(f.output, &coeff);
            }
        }
    }
    out
}

/// `mu * f` evaluated on a sequence: substitute `f`'s value into every slot
/// of the receiving structure map.
fn product_with_mu_left<F: Field>(
    cat: &AInfCategory<F>,
    f: &CochainGen,
    seq: &[GenId],
) -> LinComb<F> {
    let mut out = LinComb::zero();
    let n = seq.len();
    let sf = f.length();
    if n + 1 < sf + 1 {
        return out;
    }
    let k = n + 1 - sf; // arity of the receiving mu
    if k == 0 {
        return out;
    }
    for i in 0..=(n - sf) {
        let lo = n - i - sf;
        let hi = n - i;
        if sf == 0 {
            if n == 0 {
                continue;
            }
            if f.object != junction_object(cat, seq, i) {
                continue;
            }
        } else if f.inputs != &seq[lo..hi] {
            continue;
        }
        let mut spliced = Vec::with_capacity(k);
        spliced.extend_from_slice(&seq[..lo]);
        spliced.push(f.output);
        spliced.extend_from_slice(&seq[hi..]);
        let value = cat.mu(&spliced);
        if value.is_zero() {
            continue;
        }
        let sign = (f.degree - 1) * sign_sum(cat, seq, i);
        if sign.rem_euclid(2) == 1 {
            out.add(&value.scaled(&F::one().neg()));
        } else {
            out.add(&value);
        }
    }
    out
}

/// The bracket differential `M1(f) = [f, mu]` of a basis cochain, evaluated
/// on a display-order sequence.
pub fn bracket_differential_eval<F: Field>(
    cat: &AInfCategory<F>,
    f: &CochainGen,
    seq: &[GenId],
) -> LinComb<F> {
    let mut out = product_with_mu_right(cat, f, seq);
    let mut left = product_with_mu_left(cat, f, seq);
    // [f, mu] = f*mu - (-1)^{(r-1)(t-1)} mu*f with t = 2.
    if (f.degree - 1).rem_euclid(2) == 0 {
        left = left.scaled(&F::one().neg());
    }
    out.add(&left);
    out
}

/// Matrix of the Hochschild differential `CC^r -> CC^{r+1}` in the canonical
/// bases (columns indexed by the degree-r basis).
pub fn hochschild_differential<F: Field>(
    cat: &AInfCategory<F>,
    degree: i64,
    cap: Option<usize>,
) -> ExactMatrix<F> {
    let src = cc_basis(cat, degree, cap);
    let dst = cc_basis(cat, degree + 1, cap);
    differential_matrix(cat, &src, &dst, bracket_differential_eval)
}

/// Shared matrix assembly for the two differential conventions.
pub fn differential_matrix<F: Field>(
    cat: &AInfCategory<F>,
    src: &CcBasis,
    dst: &CcBasis,
    eval: impl Fn(&AInfCategory<F>, &CochainGen, &[GenId]) -> LinComb<F>,
) -> ExactMatrix<F> {
    let mut mat = ExactMatrix::new(dst.gens.len(), src.gens.len());
    for (col, f) in src.gens.iter().enumerate() {
        for (row, g) in dst.gens.iter().enumerate() {
            let value = eval(cat, f, &g.inputs);
            let c = value.coeff(g.output);
            if !c.is_zero() {
                mat.set(row, col, c);
            }
        }
    }
    mat
}

/// Hochschild cohomology of one degree.
#[derive(Clone, Debug)]
pub struct HhGroup<F: Field> {
    pub degree: i64,
    pub cc_dim: usize,
    /// Rank of the outgoing differential CC^r -> CC^{r+1}.
    pub rank_out: usize,
    pub dim: usize,
    /// Class representatives as coordinate vectors over the degree basis.
    pub representatives: Vec<Vec<F>>,
    pub truncated: bool,
}

pub fn hh_groups<F: Field>(
    cat: &AInfCategory<F>,
    range: (i64, i64),
    cap: Option<usize>,
) -> Vec<HhGroup<F>> {
    let mut out = Vec::new();
    for r in range.0..=range.1 {
        let basis = cc_basis(cat, r, cap);
        let m_out = hochschild_differential(cat, r, cap);
        let m_in = hochschild_differential(cat, r - 1, cap);
        let kernel = m_out.kernel_basis();
        let mut span = Subspace::new(basis.gens.len());
        for col in 0..m_in.cols() {
            let v: Vec<F> = (0..m_in.rows()).map(|row| m_in.get(row, col)).collect();
            if !v.iter().all(F::is_zero) {
                span.insert(&v);
            }
        }
        let mut representatives = Vec::new();
        for v in kernel {
            if span.insert(&v) {
                representatives.push(v);
            }
        }
        out.push(HhGroup {
            degree: r,
            cc_dim: basis.gens.len(),
            rank_out: m_out.rank(),
            dim: representatives.len(),
            representatives,
            truncated: basis.truncated,
        });
    }
    out
}

/// The three-term differential valid for categories with only binary
/// composition and even-degree hom spaces, evaluated on a sequence.
pub fn simplified_differential_eval<F: Field>(
    cat: &AInfCategory<F>,
    f: &CochainGen,
    seq: &[GenId],
) -> LinComb<F> {
    let mut out = LinComb::zero();
    let n = seq.len();
    let d = f.length();
    if n != d + 1 {
        return out;
    }
    // a_k = seq[n-1-k]; a_0 is rightmost.
    // Term 1: mu^2(f(a_d .. a_1), a_0).
    if matches_basis(f, &seq[..n - 1], cat.gen_info(seq[n - 1]).dst) {
        out.add(&cat.mu(&[f.output, seq[n - 1]]));
    }
    // Middle: (-1)^i f(..., mu^2(a_i, a_{i-1}), ...).
    for i in 1..=d {
        let pos = n - 1 - i; // display index of a_i
        let pair = cat.mu(&[seq[pos], seq[pos + 1]]);
        for (&g, c) in &pair.0 {
            let mut spliced = Vec::with_capacity(d);
            spliced.extend_from_slice(&seq[..pos]);
            spliced.push(g);
            spliced.extend_from_slice(&seq[pos + 2..]);
            if f.inputs == spliced {
                let mut coeff = c.clone();
                if i % 2 == 1 {
                    coeff = coeff.neg();
                }
                out.add_term(f.output, &coeff);
            }
        }
    }
    // Term 3: (-1)^{d+1} mu^2(a_d, f(a_{d-1} .. a_0)).
    if matches_basis(f, &seq[1..], cat.gen_info(seq[0]).src) {
        let mut term = cat.mu(&[seq[0], f.output]);
        if (d + 1) % 2 == 1 {
            term = term.scaled(&F::one().neg());
        }
        out.add(&term);
    }
    out
}

/// Result of comparing the bracket differential against the simplified
/// three-term formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrosscheckOutcome {
    /// Precondition unmet (higher products present or odd-degree morphisms).
    Skipped(String),
    /// Entrywise agreement after one global sign, recorded here.
    Agree { global_sign: i64 },
    Mismatch(String),
}

/// Independently evaluate the simplified differential and compare it with
/// the bracket differential over a degree window.
pub fn simplified_differential_crosscheck<F: Field>(
    cat: &AInfCategory<F>,
    range: (i64, i64),
    cap: Option<usize>,
) -> CrosscheckOutcome {
    if cat.mu_table().keys().any(|k| k.len() != 2) {
        return CrosscheckOutcome::Skipped("higher or unary products present".into());
    }
    if cat.morphism_gens().any(|g| cat.degree(g).rem_euclid(2) != 0) {
        return CrosscheckOutcome::Skipped("odd-degree morphisms present".into());
    }
    let mut sign: Option<i64> = None;
    for r in range.0..=range.1 {
        let src = cc_basis(cat, r, cap);
        let dst = cc_basis(cat, r + 1, cap);
        let bracket = differential_matrix(cat, &src, &dst, bracket_differential_eval);
        let simple = differential_matrix(cat, &src, &dst, simplified_differential_eval);
        for row in 0..bracket.rows() {
            for col in 0..bracket.cols() {
                let b = bracket.get(row, col);
                let s = simple.get(row, col);
                match (b.is_zero(), s.is_zero()) {
                    (true, true) => {}
                    (false, false) => {
                        let ratio = if b == s {
                            1
                        } else if b == s.neg() {
                            -1
                        } else {
                            0
                        };
                        if ratio == 0 {
                            return CrosscheckOutcome::Mismatch(format!(
                                "degree {r} entry ({row},{col}): bracket {b}, simplified {s}"
                            ));
                        }
                        match sign {
                            None => sign = Some(ratio),
                            Some(x) if x == ratio => {}
                            Some(_) => {
                                return CrosscheckOutcome::Mismatch(format!(
                                    "inconsistent sign at degree {r} entry ({row},{col})"
                                ))
                            }
                        }
                    }
                    _ => {
                        return CrosscheckOutcome::Mismatch(format!(
                            "support differs at degree {r} entry ({row},{col}): bracket {b}, simplified {s}"
                        ))
                    }
                }
            }
        }
    }
    CrosscheckOutcome::Agree { global_sign: sign.unwrap_or(1) }
}

/// Find a basis generator by its object-string label. `None` when the label
/// is absent or ambiguous (higher-dimensional hom spaces).
pub fn find_by_object_string<F: Field>(
    cat: &AInfCategory<F>,
    basis: &CcBasis,
    label: &str,
) -> Option<usize> {
    let hits: Vec<usize> = basis
        .gens
        .iter()
        .enumerate()
        .filter(|(_, g)| object_string(cat, g) == label)
        .map(|(i, _)| i)
        .collect();
    match hits.as_slice() {
        [one] => Some(*one),
        _ => None,
    }
}

/// Map object-string labels to basis columns, for tests and reports that
/// quote differential tables.
pub fn basis_labels<F: Field>(cat: &AInfCategory<F>, basis: &CcBasis) -> BTreeMap<String, usize> {
    basis.gens.iter().enumerate().map(|(i, g)| (object_string(cat, g), i)).collect()
}

/// Per-degree table rows for reports: dim CC, rank M1, dim HH and printed
/// representatives.
#[derive(Clone, Debug)]
pub struct HhTableRow {
    pub degree: i64,
    pub cc_dim: usize,
    pub rank: usize,
    pub hh_dim: usize,
    pub representatives: Vec<String>,
    pub truncated: bool,
}

pub fn hh_table<F: Field>(
    cat: &AInfCategory<F>,
    range: (i64, i64),
    cap: Option<usize>,
) -> Vec<HhTableRow> {
    hh_groups(cat, range, cap)
        .iter()
        .map(|g| {
            let basis = cc_basis(cat, g.degree, cap);
            let representatives = g
                .representatives
                .iter()
                .map(|v| {
                    let mut terms = Vec::new();
                    for (i, c) in v.iter().enumerate() {
                        if !c.is_zero() {
                            let name = object_string(cat, &basis.gens[i]);
                            if c.is_one() {
                                terms.push(name);
                            } else {
                                terms.push(format!("({c}) {name}"));
                            }
                        }
                    }
                    terms.join(" + ")
                })
                .collect();
            HhTableRow {
                degree: g.degree,
                cc_dim: g.cc_dim,
                rank: g.rank_out,
                hh_dim: g.dim,
                representatives,
                truncated: g.truncated,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rat;

    /// Three-object chain with one generator per pair; the long composite is
    /// optional, and hom(1,3) sits in an arbitrary even degree.
    pub fn chain_cat(long_composite: bool, deg13: i64) -> AInfCategory<Rat> {
        let homs = vec![
            ("m12".to_string(), 0, 1, 0),
            ("m13".to_string(), 0, 2, deg13),
            ("m23".to_string(), 1, 2, 0),
        ];
        let mut mu = Vec::new();
        if long_composite {
            assert_eq!(deg13, 0);
            mu.push((vec![2, 0], vec![(1, Rat::from_i64(1))]));
        }
        AInfCategory::new(vec!["1".into(), "2".into(), "3".into()], homs, mu).unwrap()
    }

    #[test]
    fn cc_bases_match_expected_dimensions() {
        let a2 = chain_cat(true, 0);
        assert_eq!(cc_basis(&a2, 0, None).gens.len(), 3);
        assert_eq!(cc_basis(&a2, 1, None).gens.len(), 6);
        assert_eq!(cc_basis(&a2, 2, None).gens.len(), 10);
        assert_eq!(cc_basis(&a2, -1, None).gens.len(), 0);

        let a3 = chain_cat(false, -2);
        let cc0: Vec<String> =
            cc_basis(&a3, 0, None).gens.iter().map(|g| object_string(&a3, g)).collect();
        assert_eq!(cc0, vec!["1", "2", "3", "321"]);
        let mut names: Vec<String> =
            cc_basis(&a3, 1, None).gens.iter().map(|g| object_string(&a3, g)).collect();
        names.sort();
        assert_eq!(names, vec!["11", "21", "22", "31", "32", "3211", "3221", "33", "3321"]);
        assert_eq!(cc_basis(&a3, -1, None).gens.len(), 0);
        assert_eq!(cc_basis(&a3, -2, None).gens.len(), 0);
    }

    #[test]
    fn differential_squares_to_zero() {
        for cat in [chain_cat(true, 0), chain_cat(false, 0), chain_cat(false, -2)] {
            for r in -2..=2 {
                let a = hochschild_differential(&cat, r, None);
                let b = hochschild_differential(&cat, r + 1, None);
                assert!(b.mul(&a).is_zero(), "M1 after M1 nonzero at degree {r}");
            }
        }
    }

    #[test]
    fn simplified_table_matches_hand_computation() {
        // In the simplified convention: M1(1) = -21 - 31 on the chain with
        // the long composite, M1(21) = 321, M1(31) = -321, M1(32) = 321.
        let cat = chain_cat(true, 0);
        let src = cc_basis(&cat, 0, None);
        let dst = cc_basis(&cat, 1, None);
        let labels0 = basis_labels(&cat, &src);
        let labels1 = basis_labels(&cat, &dst);
        let simple = differential_matrix(&cat, &src, &dst, simplified_differential_eval);
        let col = labels0["1"];
        let mut nonzero = BTreeMap::new();
        for (label, &row) in &labels1 {
            let c = simple.get(row, col);
            if !c.is_zero() {
                nonzero.insert(label.clone(), c);
            }
        }
        let minus_one = Rat::from_i64(-1);
        assert_eq!(
            nonzero,
            BTreeMap::from([("21".to_string(), minus_one.clone()), ("31".to_string(), minus_one)])
        );
        let src1 = cc_basis(&cat, 1, None);
        let dst2 = cc_basis(&cat, 2, None);
        let l1 = basis_labels(&cat, &src1);
        let l2 = basis_labels(&cat, &dst2);
        let m = differential_matrix(&cat, &src1, &dst2, simplified_differential_eval);
        assert_eq!(m.get(l2["321"], l1["21"]), Rat::from_i64(1));
        assert_eq!(m.get(l2["321"], l1["31"]), Rat::from_i64(-1));
        assert_eq!(m.get(l2["321"], l1["32"]), Rat::from_i64(1));
    }

    #[test]
    fn crosscheck_reports_one_global_sign() {
        for cat in [chain_cat(true, 0), chain_cat(false, 0), chain_cat(false, -2)] {
            match simplified_differential_crosscheck(&cat, (-2, 3), None) {
                CrosscheckOutcome::Agree { global_sign } => assert_eq!(global_sign, -1),
                other => panic!("unexpected outcome {other:?}"),
            }
        }
    }

    #[test]
    fn crosscheck_skips_odd_degrees() {
        let homs = vec![("u".to_string(), 0, 1, 1)];
        let cat: AInfCategory<Rat> =
            AInfCategory::new(vec!["1".into(), "2".into()], homs, vec![]).unwrap();
        assert!(matches!(
            simplified_differential_crosscheck(&cat, (0, 1), None),
            CrosscheckOutcome::Skipped(_)
        ));
    }

    #[test]
    fn hh_dimensions_of_the_three_chain_categories() {
        // Long composite present: HH^0 = 1, HH^1 = 0.
        let with = hh_groups(&chain_cat(true, 0), (0, 1), None);
        assert_eq!((with[0].dim, with[1].dim), (1, 0));
        // Absent: HH^0 = 1, HH^1 = 1.
        let without = hh_groups(&chain_cat(false, 0), (0, 1), None);
        assert_eq!((without[0].dim, without[1].dim), (1, 1));
        // Absent, hom(1,3) in degree -2: HH^0 = 2, HH^1 = 1.
        let shifted = hh_groups(&chain_cat(false, -2), (0, 1), None);
        assert_eq!((shifted[0].dim, shifted[1].dim), (2, 1));
    }

    #[test]
    fn hh0_representatives_of_the_shifted_chain() {
        let cat = chain_cat(false, -2);
        let groups = hh_groups(&cat, (0, 0), None);
        let basis = cc_basis(&cat, 0, None);
        let labels = basis_labels(&cat, &basis);
        let mut span = Subspace::new(basis.gens.len());
        for v in &groups[0].representatives {
            span.insert(v);
        }
        // k (1 + 2 + 3) and k 321 span HH^0.
        let mut sum = vec![Rat::from_i64(0); basis.gens.len()];
        for lbl in ["1", "2", "3"] {
            sum[labels[lbl]] = Rat::from_i64(1);
        }
        assert!(span.contains(&sum));
        let mut long = vec![Rat::from_i64(0); basis.gens.len()];
        long[labels["321"]] = Rat::from_i64(1);
        assert!(span.contains(&long));
    }
}
