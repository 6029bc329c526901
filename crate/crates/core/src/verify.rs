//! Verification suites over ranges of shapes.
//!
//! Every check yields a [`VerificationReport`]; a failed report carries a
//! replayable counterexample as JSON.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::asm::{
    enumerate_sorted_recurrent_with, is_recurrent, sorted_recurrent_count, Configuration,
    EnumerationBackend, SplitGraphShape,
};
use crate::cycle_lemma::{
    apply, apply_by_definition, apply_tw_power, enumerate_quasistable_nonneg, identity_check,
    verify_cycle_lemma, weight, ExtendedConfiguration, Operator,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::polyomino::{cti_bounce, from_config, itc_bounce, sts};
use crate::qt_poly::{
    default_points, egge_sum_with, extremal_words, f_cti_with, f_itc_with, hexagon_fiber,
    hexagon_shuffle_gf, itc_sum_with, nabla_symmetry_check, q_multinomial, qt_schroder_with,
    Partition, QtPolynomial,
};
use crate::schroder::{
    antidiagonal_bounce, area, compress, enumerate_schroder_words, enumerate_words, haglund_bounce,
    loehr_bounce, mirror, mirror_schroder, peaks_from_itc_trace, phi, phi_inv, region_le,
    schroder_bounce, schroder_peaks, triangle_le, SchroderWord,
};
use crate::toppling::{
    count_ehkk, count_itc, count_itc_k, enumerate_itc_sequences, itc_sequence_of, topple_cti,
    topple_itc, ItcSequence,
};

/// Whether a check concerns a theorem or an open conjecture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Theorem,
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Parameter range of a sweep: `1 <= n <= max_n`, `0 <= d <= max_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Range {
    pub max_n: usize,
    pub max_d: usize,
}

impl Range {
    pub fn new(max_n: usize, max_d: usize) -> Self {
        Self { max_n, max_d }
    }

    pub fn shapes(&self) -> Vec<SplitGraphShape> {
        (1..=self.max_n)
            .flat_map(|n| (0..=self.max_d).map(move |d| SplitGraphShape { n, d }))
            .collect()
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub kind: CheckKind,
    pub range: Range,
    pub status: Status,
    pub counterexample: Option<Value>,
    pub duration_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One line of text, `PASS name [n<=.., d<=..] (.. ms)`.
    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} {} [n<={}, d<={}] ({} ms)",
            self.name, self.range.max_n, self.range.max_d, self.duration_ms
        );
        if let Some(c) = &self.counterexample {
            s.push_str(&format!(" counterexample: {c}"));
        }
        s
    }
}

/// A named suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Bijections,
    Theorems,
    CycleLemma,
    Conjectures,
    Appendix,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "bijections" => Suite::Bijections,
            "theorems" => Suite::Theorems,
            "cycle-lemma" => Suite::CycleLemma,
            "conjectures" => Suite::Conjectures,
            "appendix" => Suite::Appendix,
            "all" => Suite::All,
            other => return Err(Error::Parse(format!("unknown suite '{other}'"))),
        })
    }
}

type Outcome = Result<Option<Value>>;

fn run_check<F>(name: &str, kind: CheckKind, range: Range, f: F) -> VerificationReport
where
    F: FnOnce() -> Outcome,
{
    let start = Instant::now();
    let (status, counterexample) = match f() {
        Ok(None) => (Status::Pass, None),
        Ok(Some(v)) => (Status::Fail, Some(v)),
        Err(e) => (Status::Fail, Some(json!({ "error": e.to_string() }))),
    };
    VerificationReport {
        name: name.to_string(),
        kind,
        range,
        status,
        counterexample,
        duration_ms: start.elapsed().as_millis(),
    }
}

fn shape_json(s: SplitGraphShape) -> Value {
    json!({ "n": s.n, "d": s.d })
}

/// Runs `f` on every sorted recurrent configuration of every shape; the first
/// failure (in shape order, then enumeration order) becomes the counterexample.
fn per_config<F>(range: Range, exec: Execution, f: F) -> Outcome
where
    F: Fn(SplitGraphShape, &Configuration) -> Result<Option<Value>> + Sync + Send,
{
    for shape in range.shapes() {
        let configs = enumerate_sorted_recurrent_with(shape, EnumerationBackend::DharFilter, exec);
        let hit = exec.find_first(&configs, |c| match f(shape, c) {
            Ok(None) => None,
            Ok(Some(v)) => Some(json!({ "shape": shape_json(shape), "config": c.to_string(), "detail": v })),
            Err(e) => Some(json!({ "shape": shape_json(shape), "config": c.to_string(), "error": e.to_string() })),
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn mismatch<T: std::fmt::Debug>(label: &str, got: T, expected: T) -> Option<Value> {
    Some(json!({ "check": label, "got": format!("{got:?}"), "expected": format!("{expected:?}") }))
}

fn ensure_eq<T: PartialEq + std::fmt::Debug>(label: &str, got: T, expected: T) -> Option<Value> {
    if got == expected {
        None
    } else {
        mismatch(label, got, expected)
    }
}

/// Bijection checks: `phi`, enumeration backends, counts, mirror, compress.
pub fn bijections(range: Range, exec: Execution) -> Vec<VerificationReport> {
    let k = CheckKind::Theorem;
    vec![
        run_check("recurrent-count", k, range, || {
            for shape in range.shapes() {
                let got =
                    enumerate_sorted_recurrent_with(shape, EnumerationBackend::DharFilter, exec)
                        .len();
                let expected = sorted_recurrent_count(shape.n, shape.d)?;
                if BigUint::from(got) != expected {
                    return Ok(Some(
                        json!({ "shape": shape_json(shape), "enumerated": got, "formula": expected.to_string() }),
                    ));
                }
            }
            Ok(None)
        }),
        run_check("enumeration-backends", k, range, || {
            for shape in range.shapes() {
                let a =
                    enumerate_sorted_recurrent_with(shape, EnumerationBackend::DharFilter, exec);
                let b =
                    enumerate_sorted_recurrent_with(shape, EnumerationBackend::SchroderImage, exec);
                if a != b {
                    return Ok(Some(
                        json!({ "shape": shape_json(shape), "dhar": a.len(), "schroder": b.len() }),
                    ));
                }
            }
            Ok(None)
        }),
        run_check("phi-round-trip", k, range, || {
            for shape in range.shapes() {
                let words = enumerate_schroder_words(shape.n, shape.d);
                let hit = exec.find_first(&words, |w| {
                    let c = phi(w);
                    match phi_inv(&c) {
                        Ok(back) if back == *w => None,
                        _ => Some(json!({ "word": w.to_string(), "config": c.to_string() })),
                    }
                });
                if hit.is_some() {
                    return Ok(hit);
                }
            }
            per_config(range, exec, |_, c| {
                Ok(ensure_eq("phi(phi_inv(c))", phi(&phi_inv(c)?), c.clone()))
            })
        }),
        run_check("mirror-involution", k, range, || {
            per_config(range, exec, |_, c| {
                let w = phi_inv(c)?;
                let m = mirror(w.word());
                if !m.is_schroder() || mirror(&m) != *w.word() || m.len() != w.word().len() {
                    return Ok(Some(json!({ "word": w.to_string() })));
                }
                Ok(None)
            })
        }),
        run_check("from-config-equals-sts", k, range, || {
            per_config(range, exec, |shape, c| {
                let p = from_config(shape, c)?;
                Ok(ensure_eq("polyomino", p, sts(phi_inv(c)?.word())?))
            })
        }),
        run_check("compress-is-recurrent", k, range, || {
            per_config(range, exec, |shape, c| {
                let k = compress(shape, c)?;
                let kshape = SplitGraphShape::new(shape.n, 0)?;
                Ok(if is_recurrent(kshape, &k)? {
                    None
                } else {
                    Some(json!({ "compressed": k.to_string() }))
                })
            })
        }),
    ]
}

/// Theorem checks at the given range.
pub fn theorems(range: Range, exec: Execution) -> Vec<VerificationReport> {
    let k = CheckKind::Theorem;
    vec![
        run_check("traces-valid", k, range, || {
            per_config(range, exec, |shape, c| {
                topple_cti(shape, c)?;
                topple_itc(shape, c)?;
                Ok(None)
            })
        }),
        run_check("area-equals-level", k, range, || {
            per_config(range, exec, |shape, c| {
                let w = mirror_schroder(&phi_inv(c)?);
                Ok(ensure_eq("area", area(&w) as i64, c.level(shape)))
            })
        }),
        run_check("itc-wtopple-equals-bounce", k, range, || {
            per_config(range, exec, |shape, c| {
                let w = mirror_schroder(&phi_inv(c)?);
                let wt = topple_itc(shape, c)?.wtopple() as i64 - shape.vertex_count() as i64;
                Ok(ensure_eq("bounce", schroder_bounce(&w)? as i64, wt))
            })
        }),
        run_check("peak-coincidence", k, range, || {
            per_config(range, exec, |shape, c| {
                let w = mirror_schroder(&phi_inv(c)?);
                Ok(ensure_eq(
                    "peaks",
                    schroder_peaks(&w),
                    peaks_from_itc_trace(&topple_itc(shape, c)?)?,
                ))
            })
        }),
        run_check("itc-sequence-image", k, range, || {
            for shape in range.shapes() {
                let configs =
                    enumerate_sorted_recurrent_with(shape, EnumerationBackend::DharFilter, exec);
                let image: Result<BTreeSet<ItcSequence>> = exec
                    .map(&configs, |c| itc_sequence_of(&topple_itc(shape, c)?))
                    .into_iter()
                    .collect();
                let image = image?;
                let listed: BTreeSet<ItcSequence> = enumerate_itc_sequences(shape.n, shape.d)
                    .into_iter()
                    .collect();
                if image != listed {
                    let extra: Vec<String> = image
                        .symmetric_difference(&listed)
                        .map(|s| s.to_string())
                        .collect();
                    return Ok(Some(
                        json!({ "shape": shape_json(shape), "difference": extra }),
                    ));
                }
            }
            Ok(None)
        }),
        run_check("itc-counts", k, range, || {
            for shape in range.shapes() {
                let (n, d) = (shape.n, shape.d);
                let total = count_itc(n, d);
                let by_k: BigUint = (1..=n + 1).map(|k| count_itc_k(n, d, k)).sum();
                let listed = BigUint::from(enumerate_itc_sequences(n, d).len());
                if total != by_k || total != count_ehkk(n, d) || total != listed {
                    return Ok(Some(
                        json!({ "shape": shape_json(shape), "total": total.to_string(),
                        "by_k": by_k.to_string(), "ehkk": count_ehkk(n, d).to_string(), "listed": listed.to_string() }),
                    ));
                }
            }
            Ok(None)
        }),
        run_check("polyomino-validity-iff-schroder", k, range, || {
            for shape in range.shapes() {
                let words = enumerate_words(shape.n, shape.d);
                let hit = exec.find_first(&words, |w| match sts(w) {
                    Ok(p) if p.is_valid() == w.is_schroder() => None,
                    _ => Some(json!({ "word": w.to_string() })),
                });
                if hit.is_some() {
                    return Ok(hit);
                }
            }
            Ok(None)
        }),
        run_check("polyomino-cti-bounce", k, range, || {
            per_config(range, exec, |shape, c| {
                let p = from_config(shape, c)?;
                let nd = shape.vertex_count() as i64;
                let height = p.area() as i64 - nd + shape.non_sink_edges();
                if height != c.height() as i64 {
                    return Ok(mismatch("height", height, c.height() as i64));
                }
                Ok(ensure_eq(
                    "cti sizes",
                    cti_bounce(&p)?.sizes,
                    topple_cti(shape, c)?.sizes(),
                ))
            })
        }),
        run_check("polyomino-itc-bounce", k, range, || {
            per_config(range, exec, |shape, c| {
                let p = from_config(shape, c)?;
                Ok(ensure_eq(
                    "itc sizes",
                    itc_bounce(&p)?.normalized(),
                    crate::polyomino::normalize_sizes(&topple_itc(shape, c)?.sizes()),
                ))
            })
        }),
    ]
}

/// Exhaustive operator laws on compact sorted configurations near the
/// quasi-stable region.
pub fn operator_laws(shape: SplitGraphShape) -> Result<Option<Value>> {
    let base = enumerate_quasistable_nonneg(shape);
    let mut samples: Vec<ExtendedConfiguration> = Vec::new();
    for u in &base {
        samples.push(u.clone());
        samples.push(apply(shape, Operator::TsInv, u)?);
        samples.push(apply(shape, Operator::Tk, u)?);
    }
    let mut ops = vec![Operator::Ts, Operator::Tk];
    if shape.d > 0 {
        ops.push(Operator::Ti);
    }
    for u in &samples {
        for &op in &ops {
            let a = apply(shape, op, u)?;
            if a != apply_by_definition(shape, op, u)? {
                return Ok(Some(
                    json!({ "op": format!("{op:?}"), "config": u.to_string(), "law": "closed form" }),
                ));
            }
            if apply(shape, op.inverse(), &a)? != *u {
                return Ok(Some(
                    json!({ "op": format!("{op:?}"), "config": u.to_string(), "law": "inverse" }),
                ));
            }
        }
        if !identity_check(shape, u)? {
            return Ok(Some(json!({ "config": u.to_string(), "law": "identity" })));
        }
        let w = apply(shape, Operator::Tw, u)?;
        if weight(shape, &w.clique) != weight(shape, &u.clique) - 1
            || w.independent != u.independent
        {
            return Ok(Some(json!({ "config": u.to_string(), "law": "weight" })));
        }
        let zero = weight(shape, &u.clique) == 0;
        let qs = u
            .clique
            .iter()
            .all(|&x| x >= 0 && x <= (shape.n + shape.d) as i64);
        if zero != qs {
            return Ok(Some(
                json!({ "config": u.to_string(), "law": "weight zero" }),
            ));
        }
        let norm = apply_tw_power(shape, weight(shape, &u.clique), u)?;
        if weight(shape, &norm.clique) != 0 {
            return Ok(Some(
                json!({ "config": u.to_string(), "law": "normalization" }),
            ));
        }
    }
    Ok(None)
}

/// Cycle lemma partition and operator laws.
pub fn cycle_lemma(range: Range, exec: Execution) -> Vec<VerificationReport> {
    let k = CheckKind::Theorem;
    vec![
        run_check("cycle-lemma-partition", k, range, || {
            for shape in range.shapes() {
                let rep = verify_cycle_lemma(shape, exec)?;
                if let Some(f) = rep.failure {
                    return Ok(Some(json!({ "shape": shape_json(shape), "failure": f })));
                }
            }
            Ok(None)
        }),
        run_check("operator-laws", k, range, || {
            let shapes = range.shapes();
            let results = exec.map(&shapes, |&s| {
                operator_laws(s).map(|o| o.map(|v| json!({ "shape": shape_json(s), "detail": v })))
            });
            for r in results {
                if let Some(v) = r? {
                    return Ok(Some(v));
                }
            }
            Ok(None)
        }),
    ]
}

fn poly_diff(
    label: &str,
    shape: SplitGraphShape,
    a: &QtPolynomial,
    b: &QtPolynomial,
) -> Option<Value> {
    if a == b {
        return None;
    }
    Some(
        json!({ "shape": shape_json(shape), "check": label, "left": a.to_json(), "right": b.to_json() }),
    )
}

/// Conjecture checks: CTI and ITC generating functions agree, and the
/// bistatistic bijection exists.
pub fn conjectures(range: Range, exec: Execution) -> Vec<VerificationReport> {
    let k = CheckKind::Conjecture;
    vec![
        run_check("conjecture-cti-equals-itc", k, range, || {
            for shape in range.shapes() {
                let (a, b) = (f_cti_with(shape, exec)?, f_itc_with(shape, exec)?);
                if let Some(v) = poly_diff("f_cti = f_itc", shape, &a, &b) {
                    return Ok(Some(v));
                }
            }
            Ok(None)
        }),
        run_check("conjecture-cti-equals-schroder", k, range, || {
            for shape in range.shapes() {
                let (a, b) = (
                    f_cti_with(shape, exec)?,
                    qt_schroder_with(shape.n, shape.d, exec)?,
                );
                if let Some(v) = poly_diff("f_cti = qt_schroder", shape, &a, &b) {
                    return Ok(Some(v));
                }
            }
            Ok(None)
        }),
        run_check("conjecture-bistatistic-bijection", k, range, || {
            for shape in range.shapes() {
                if let Some(v) = bistatistic_bijection(shape, exec)?.err() {
                    return Ok(Some(v));
                }
            }
            Ok(None)
        }),
    ]
}

/// Builds a bijection `Psi` on sorted recurrent configurations with
/// `height(Psi(c)) = height(c)` and `wtopple_ITC(Psi(c)) = wtopple_CTI(c)`
/// by pairing the fibers of the two bistatistics in enumeration order.
pub fn bistatistic_bijection(
    shape: SplitGraphShape,
    exec: Execution,
) -> Result<std::result::Result<Vec<(Configuration, Configuration)>, Value>> {
    let configs = enumerate_sorted_recurrent_with(shape, EnumerationBackend::DharFilter, exec);
    let stats: Result<Vec<(u64, u64, u64)>> = exec
        .map(&configs, |c| {
            Ok((
                c.height(),
                topple_cti(shape, c)?.wtopple(),
                topple_itc(shape, c)?.wtopple(),
            ))
        })
        .into_iter()
        .collect();
    let stats = stats?;
    let mut cti: BTreeMap<(u64, u64), Vec<usize>> = BTreeMap::new();
    let mut itc: BTreeMap<(u64, u64), Vec<usize>> = BTreeMap::new();
    for (i, &(h, wc, wi)) in stats.iter().enumerate() {
        cti.entry((h, wc)).or_default().push(i);
        itc.entry((h, wi)).or_default().push(i);
    }
    let mut pairs = Vec::with_capacity(configs.len());
    for (key, from) in &cti {
        let to = itc.get(key).map(Vec::as_slice).unwrap_or(&[]);
        if to.len() != from.len() {
            return Ok(Err(
                json!({ "shape": shape_json(shape), "height": key.0, "wtopple": key.1,
                "cti_fiber": from.len(), "itc_fiber": to.len() }),
            ));
        }
        for (&a, &b) in from.iter().zip(to) {
            pairs.push((configs[a].clone(), configs[b].clone()));
        }
    }
    if pairs.len() != configs.len() {
        return Ok(Err(
            json!({ "shape": shape_json(shape), "unpaired": configs.len() - pairs.len() }),
        ));
    }
    Ok(Ok(pairs))
}

/// Polynomial identities, fiber intervals, hexagon lemma, rational-point identity.
pub fn appendix(range: Range, exec: Execution) -> Vec<VerificationReport> {
    let k = CheckKind::Theorem;
    vec![
        run_check("four-way-identity", k, range, || {
            for shape in range.shapes() {
                let (n, d) = (shape.n, shape.d);
                let s = qt_schroder_with(n, d, exec)?;
                for (label, p) in [
                    ("f_itc", f_itc_with(shape, exec)?),
                    ("egge_sum", egge_sum_with(n, d, exec)?),
                    ("itc_sum", itc_sum_with(n, d, exec)?),
                ] {
                    if let Some(v) = poly_diff(label, shape, &p, &s) {
                        return Ok(Some(v));
                    }
                }
                if BigUint::try_from(s.eval_one()).ok() != Some(sorted_recurrent_count(n, d)?) {
                    return Ok(Some(
                        json!({ "shape": shape_json(shape), "check": "value at q=t=1" }),
                    ));
                }
            }
            Ok(None)
        }),
        run_check("qt-symmetry", k, range, || {
            for shape in range.shapes() {
                let s = qt_schroder_with(shape.n, shape.d, exec)?;
                if !s.is_qt_symmetric() {
                    return Ok(Some(
                        json!({ "shape": shape_json(shape), "poly": s.to_json() }),
                    ));
                }
            }
            Ok(None)
        }),
        run_check("fiber-interval", k, range, || {
            for shape in range.shapes() {
                if let Some(v) = fiber_interval(shape, exec)? {
                    return Ok(Some(v));
                }
            }
            Ok(None)
        }),
        run_check("fiber-hexagon-product", k, range, || {
            for shape in range.shapes() {
                if let Some(v) = fiber_hexagon_product(shape, exec)? {
                    return Ok(Some(v));
                }
            }
            Ok(None)
        }),
        run_check("hexagon-gf", k, range, || {
            let m = range.max_n.max(range.max_d);
            for a in 0..=m {
                for b in 0..=m {
                    for c in 0..=m {
                        if hexagon_shuffle_gf(a, b, c) != q_multinomial(a, b, c) {
                            return Ok(Some(json!({ "a": a, "b": b, "c": c })));
                        }
                    }
                }
            }
            Ok(None)
        }),
        run_check("partition-exchange", k, range, || {
            for size in 1..=range.max_n + range.max_d {
                if let Some(v) = partition_exchange(size) {
                    return Ok(Some(v));
                }
            }
            Ok(None)
        }),
        run_check("nabla-identity", k, range, || {
            for size in 1..=range.max_n.clamp(1, 5) {
                let rep = nabla_symmetry_check(size, &default_points(size, 5))?;
                if !rep.all_ok() {
                    return Ok(Some(serde_json::to_value(rep).unwrap_or(Value::Null)));
                }
            }
            Ok(None)
        }),
    ]
}

/// `a_mu(x) = l_mu'(x')`, `l_mu(x) = a_mu'(x')`, and likewise for the co-statistics.
pub fn partition_exchange(size: usize) -> Option<Value> {
    for mu in Partition::all(size) {
        let conj = mu.conjugate();
        if conj.conjugate() != mu {
            return Some(json!({ "partition": mu.parts(), "law": "conjugate" }));
        }
        for x in mu.cells() {
            let xt = (x.1, x.0);
            if mu.arm(x) != conj.leg(xt)
                || mu.leg(x) != conj.arm(xt)
                || mu.coarm(x) != conj.coleg(xt)
                || mu.coleg(x) != conj.coarm(xt)
            {
                return Some(json!({ "partition": mu.parts(), "cell": [x.0, x.1] }));
            }
        }
    }
    None
}

/// The words `mirror(phi_inv(c))` grouped by the ITC sequence of `c`.
pub fn itc_fibers(
    shape: SplitGraphShape,
    exec: Execution,
) -> Result<BTreeMap<ItcSequence, BTreeSet<String>>> {
    let configs = enumerate_sorted_recurrent_with(shape, EnumerationBackend::DharFilter, exec);
    let words: Result<Vec<(ItcSequence, String)>> = exec
        .map(&configs, |c| {
            Ok((
                itc_sequence_of(&topple_itc(shape, c)?)?,
                mirror_schroder(&phi_inv(c)?).to_string(),
            ))
        })
        .into_iter()
        .collect();
    let mut fibers: BTreeMap<ItcSequence, BTreeSet<String>> = BTreeMap::new();
    for (s, w) in words? {
        fibers.entry(s).or_default().insert(w);
    }
    Ok(fibers)
}

/// The fiber of every ITC sequence equals the interval `[w_lower, w_upper]`
/// in lower-triangle containment order. A failure also reports the interval
/// size under region containment.
pub fn fiber_interval(shape: SplitGraphShape, exec: Execution) -> Result<Option<Value>> {
    let mut fibers = itc_fibers(shape, exec)?;
    let all = enumerate_schroder_words(shape.n, shape.d);
    for seq in enumerate_itc_sequences(shape.n, shape.d) {
        let (lo, up) = extremal_words(&seq)?;
        let interval = |le: fn(&SchroderWord, &SchroderWord) -> bool| -> BTreeSet<String> {
            all.iter()
                .filter(|w| le(&lo, w) && le(w, &up))
                .map(|w| w.to_string())
                .collect()
        };
        let triangles = interval(triangle_le);
        let fiber = fibers.remove(&seq).unwrap_or_default();
        if triangles != fiber {
            let region = interval(region_le);
            let extra: Vec<&String> = region.difference(&fiber).collect();
            return Ok(Some(
                json!({ "shape": shape_json(shape), "sequence": seq.to_string(),
                "lower": lo.to_string(), "upper": up.to_string(), "fiber": fiber.len(),
                "interval": triangles.len(), "region_interval": region.len(),
                "region_extra": extra }),
            ));
        }
    }
    Ok(None)
}

/// The fiber of every ITC sequence is the product of its hexagon shuffles.
pub fn fiber_hexagon_product(shape: SplitGraphShape, exec: Execution) -> Result<Option<Value>> {
    let mut fibers = itc_fibers(shape, exec)?;
    for seq in enumerate_itc_sequences(shape.n, shape.d) {
        let product: BTreeSet<String> =
            hexagon_fiber(&seq)?.iter().map(|w| w.to_string()).collect();
        let fiber = fibers.remove(&seq).unwrap_or_default();
        if product != fiber {
            return Ok(Some(
                json!({ "shape": shape_json(shape), "sequence": seq.to_string(),
                "fiber": fiber.len(), "product": product.len() }),
            ));
        }
    }
    if let Some((seq, _)) = fibers.into_iter().next() {
        return Ok(Some(
            json!({ "shape": shape_json(shape), "unlisted_sequence": seq.to_string() }),
        ));
    }
    Ok(None)
}

/// Haglund's, Loehr's and the anti-diagonal bounce agree on every Schröder
/// word in range.
pub fn bounce_agreement(range: Range, exec: Execution) -> Outcome {
    for shape in range.shapes() {
        let words = enumerate_schroder_words(shape.n, shape.d);
        let hit = exec.find_first(&words, |w| {
            let (h, l, a) = (haglund_bounce(w), loehr_bounce(w), antidiagonal_bounce(w));
            (h != l || h != a).then(
                || json!({ "word": w.to_string(), "haglund": h, "loehr": l, "antidiagonal": a }),
            )
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// Runs a suite.
pub fn run_suite(suite: Suite, range: Range, exec: Execution) -> Vec<VerificationReport> {
    match suite {
        Suite::Bijections => {
            let mut v = bijections(range, exec);
            v.push(run_check(
                "bounce-agreement",
                CheckKind::Theorem,
                range,
                || bounce_agreement(range, exec),
            ));
            v
        }
        Suite::Theorems => theorems(range, exec),
        Suite::CycleLemma => cycle_lemma(range, exec),
        Suite::Conjectures => conjectures(range, exec),
        Suite::Appendix => appendix(range, exec),
        Suite::All => [
            Suite::Bijections,
            Suite::Theorems,
            Suite::CycleLemma,
            Suite::Appendix,
            Suite::Conjectures,
        ]
        .into_iter()
        .flat_map(|s| run_suite(s, range, exec))
        .collect(),
    }
}
