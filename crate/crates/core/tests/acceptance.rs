//! Acceptance suite: twelve criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so every line is printed. The process
//! fails if any criterion other than the known fiber-interval counterexample
//! fails, or if that counterexample changes.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sandpile_lab::asm::{
    enumerate_sorted_recurrent, sorted_recurrent_count, stabilize, stabilize_by,
};
use sandpile_lab::combinat::binomial;
use sandpile_lab::cycle_lemma::{
    apply, apply_by_definition, count_quasistable_nonneg, identity_check, verify_cycle_lemma,
    ExtendedConfiguration, Operator,
};
use sandpile_lab::polyomino::{cti_bounce, from_config, itc_bounce, normalize_sizes, sts};
use sandpile_lab::qt_poly::{
    default_points, egge_sum, extremal_words, f_cti, f_itc, hexagon_fiber, hexagon_shuffle_gf,
    itc_sum, nabla_symmetry_check, q_multinomial, qt_schroder, w_weight, Partition,
};
use sandpile_lab::schroder::{
    antidiagonal_bounce, area, collapse, compress, dyck_bounce, enumerate_schroder_words,
    enumerate_words, haglund_bounce, loehr_bounce, mirror, mirror_schroder, phi, phi_inv,
    region_le, schroder_bounce, schroder_peaks, triangle_le,
};
use sandpile_lab::toppling::{
    count_ehkk, count_itc, count_itc_k, enumerate_itc_sequences, itc_image,
    itc_sequences_by_length, topple_cti, topple_itc,
};
use sandpile_lab::verify::itc_fibers;
use sandpile_lab::{
    Configuration, Execution, ItcSequence, QtPolynomial, SchroderWord, SplitGraphShape,
};

type Check = Result<String, String>;

fn shape(n: usize, d: usize) -> SplitGraphShape {
    SplitGraphShape::new(n, d).unwrap()
}

fn config(s: &str) -> Configuration {
    s.parse().unwrap()
}

fn word(s: &str) -> SchroderWord {
    s.parse().unwrap()
}

fn shapes(max_n: usize, max_d: usize) -> Vec<SplitGraphShape> {
    (1..=max_n)
        .flat_map(|n| (0..=max_d).map(move |d| shape(n, d)))
        .collect()
}

fn expect<T: PartialEq + std::fmt::Debug>(label: &str, got: T, expected: T) -> Result<(), String> {
    if got == expected {
        Ok(())
    } else {
        Err(format!("{label}: got {got:?}, expected {expected:?}"))
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Check {
    let printed = QtPolynomial::from_terms([
        (5, 0, 1),
        (0, 5, 1),
        (4, 1, 1),
        (1, 4, 1),
        (3, 2, 1),
        (2, 3, 1),
        (4, 0, 1),
        (0, 4, 1),
        (3, 1, 2),
        (1, 3, 2),
        (2, 2, 2),
        (3, 0, 2),
        (0, 3, 2),
        (2, 1, 3),
        (1, 2, 3),
        (2, 0, 1),
        (0, 2, 1),
        (1, 1, 2),
        (1, 0, 1),
        (0, 1, 1),
    ]);
    let got = f_cti(2, 2).map_err(fail)?;
    expect("f_cti(2,2)", got.terms(), printed.terms())?;
    Ok(format!("{} terms, {}", got.term_count(), got.to_latex()))
}

const TABLE_2_2: [(&str, u64, &[usize], u64); 30] = [
    ("3,3;2,2", 10, &[2, 2], 4),
    ("3,3;2,1", 9, &[2, 2], 4),
    ("3,3;2,0", 8, &[2, 2], 4),
    ("3,3;1,1", 8, &[2, 2], 4),
    ("3,3;1,0", 7, &[2, 2], 4),
    ("3,3;0,0", 6, &[2, 2], 4),
    ("3,2;2,2", 9, &[1, 2, 1, 0], 5),
    ("3,2;2,1", 8, &[1, 2, 1, 0], 5),
    ("3,2;2,0", 7, &[1, 1, 1, 1], 6),
    ("3,2;1,1", 7, &[1, 2, 1, 0], 5),
    ("3,2;1,0", 6, &[1, 1, 1, 1], 6),
    ("3,2;0,0", 5, &[1, 0, 1, 2], 7),
    ("3,1;2,2", 8, &[1, 2, 1, 0], 5),
    ("3,1;2,1", 7, &[1, 2, 1, 0], 5),
    ("3,1;2,0", 6, &[1, 1, 1, 1], 6),
    ("3,1;1,0", 5, &[1, 1, 1, 1], 6),
    ("3,1;1,1", 6, &[1, 2, 1, 0], 5),
    ("3,0;2,2", 7, &[1, 2, 1, 0], 5),
    ("3,0;2,1", 6, &[1, 2, 1, 0], 5),
    ("3,0;1,1", 5, &[1, 2, 1, 0], 5),
    ("2,2;2,2", 8, &[0, 2, 2, 0], 6),
    ("2,2;2,1", 7, &[0, 1, 2, 1], 7),
    ("2,2;2,0", 6, &[0, 1, 2, 1], 7),
    ("2,1;2,2", 7, &[0, 2, 2, 0], 6),
    ("2,1;2,1", 6, &[0, 1, 1, 1, 1, 0], 8),
    ("2,1;2,0", 5, &[0, 1, 1, 0, 1, 1], 9),
    ("2,0;2,2", 6, &[0, 2, 1, 0, 1, 0], 7),
    ("2,0;2,1", 5, &[0, 1, 1, 1, 1, 0], 8),
    ("1,1;2,2", 6, &[0, 2, 2, 0], 6),
    ("1,0;2,2", 5, &[0, 2, 1, 0, 1, 0], 7),
];

fn criterion_2() -> Check {
    let sh = shape(2, 2);
    let configs = enumerate_sorted_recurrent(sh);
    expect("|SortedRec(S_2,2)|", configs.len(), 30)?;
    let enumerated: BTreeSet<Configuration> = configs.iter().cloned().collect();
    let table: BTreeSet<Configuration> = TABLE_2_2.iter().map(|r| config(r.0)).collect();
    expect("configuration set", &enumerated, &table)?;
    for (c, height, sizes, wt) in TABLE_2_2 {
        let cfg = config(c);
        let trace = topple_cti(sh, &cfg).map_err(fail)?;
        expect(&format!("height of {c}"), cfg.height(), height)?;
        expect(&format!("topple_CTI of {c}"), trace.sizes(), sizes.to_vec())?;
        expect(&format!("wtopple of {c}"), trace.wtopple(), wt)?;
    }
    Ok("30 rows match".into())
}

/// Configurations on `S_{4,5}` whose polyomino has the bounce sizes and
/// area printed for the second sawtooth example. The drawing itself is not
/// available as data, so the example is pinned down only by these values.
fn second_polyomino_candidates() -> Result<Vec<Configuration>, String> {
    let sh = shape(4, 5);
    let mut hits = Vec::new();
    for c in enumerate_sorted_recurrent(sh) {
        let p = from_config(sh, &c).map_err(fail)?;
        if cti_bounce(&p).map_err(fail)?.sizes == [1, 3, 1, 1, 2, 1]
            && itc_bounce(&p).map_err(fail)?.sizes == [2, 1, 1, 1, 1, 2, 1, 0]
            && p.area() == 15
        {
            hits.push(c);
        }
    }
    if hits.is_empty() {
        return Err(
            "no polyomino on S_4,5 has bounce sizes (1,3,1,1,2,1), (2,1,1,1,1,2,1,0) and area 15"
                .into(),
        );
    }
    Ok(hits)
}

fn criterion_3() -> Check {
    let s53 = shape(5, 3);
    let c = config("7,6,5,2,1;5,4,4");

    let cti = topple_cti(s53, &c).map_err(fail)?;
    expect("CTI sizes", cti.sizes(), vec![1, 3, 2, 0, 2, 0])?;
    let blocks: Vec<(Vec<usize>, Vec<usize>)> = cti
        .rounds
        .iter()
        .map(|r| (r.clique.clone(), r.independent.clone()))
        .collect();
    expect(
        "CTI rounds",
        blocks,
        vec![
            (vec![1], vec![1, 2, 3]),
            (vec![2, 3], vec![]),
            (vec![4, 5], vec![]),
        ],
    )?;

    let itc = topple_itc(s53, &c).map_err(fail)?;
    expect("ITC sizes", itc.sizes(), vec![1, 2, 2, 2, 0, 1])?;
    expect("ITC wtopple", itc.wtopple(), 14)?;

    let w = word("UHUDUHHDUDUDD");
    expect("phi(w)", phi(&w), c.clone())?;
    expect("area(w)", area(&w), 9)?;
    let (dyck, _) = dyck_bounce(&collapse(&w)).map_err(fail)?;
    expect("bounce(C(w))", dyck, 4)?;
    expect("bounce(w)", schroder_bounce(&w).map_err(fail)?, 8)?;
    let peaks: BTreeSet<_> = schroder_peaks(&w).into_iter().collect();
    expect("Peak(w)", peaks, [(0, 1), (2, 4), (6, 8)].into())?;

    let m = mirror_schroder(&w);
    expect("mirror(w)", m.to_string(), "UUDUDUHHDUDHD".into())?;
    expect("area(mirror)", area(&m), 9)?;
    expect("bounce(mirror)", schroder_bounce(&m).map_err(fail)?, 6)?;
    let peaks: BTreeSet<_> = schroder_peaks(&m).into_iter().collect();
    expect("Peak(mirror)", peaks, [(0, 1), (1, 3), (5, 7)].into())?;
    expect("level(c)", c.level(s53), 9)?;

    let mirrored = config("7,7,6,5,2;3,3,1");
    expect("phi(mirror(w))", phi(&m), mirrored.clone())?;
    let mirror_itc = topple_itc(s53, &mirrored).map_err(fail)?;
    expect(
        "ITC sizes of 7,7,6,5,2;3,3,1",
        mirror_itc.sizes(),
        vec![0, 2, 2, 2, 1, 1],
    )?;

    let s54 = shape(5, 4);
    let wide = config("7,6,6,5,4;5,5,4,3");
    expect(
        "compress",
        compress(s54, &wide).map_err(fail)?,
        config("4,4,4,3,3"),
    )?;
    let wide_bounce = itc_bounce(&from_config(s54, &wide).map_err(fail)?).map_err(fail)?;
    expect(
        "itcBounce prefix",
        wide_bounce.sizes[..4].to_vec(),
        vec![2, 3, 2, 2],
    )?;
    expect(
        "ITC toppling prefix",
        topple_itc(s54, &wide).map_err(fail)?.sizes()[..4].to_vec(),
        vec![2, 3, 2, 2],
    )?;

    let s45 = shape(4, 5);
    let ca = config("7,4,2,1;4,4,3,3,1");
    let wa = phi_inv(&ca).map_err(fail)?;
    expect("phi_inv", wa.to_string(), "HUHDHUHDUDUHD".into())?;
    let pa = sts(wa.word()).map_err(fail)?;
    expect(
        "f(c) = sts(w)",
        from_config(s45, &ca).map_err(fail)?,
        pa.clone(),
    )?;
    expect("upper path", pa.upper_string(), "NSNSSSNSSNSNSSS".into())?;
    expect("lower path", pa.lower_string(), "SSWSSWWSWW".into())?;
    expect("area (a)", pa.area(), 12)?;
    expect(
        "ctiBounce (a)",
        cti_bounce(&pa).map_err(fail)?.sizes,
        vec![0, 2, 1, 2, 1, 0, 1, 1, 1, 0],
    )?;
    expect(
        "itcBounce (a)",
        itc_bounce(&pa).map_err(fail)?.sizes,
        vec![2, 1, 2, 1, 0, 1, 1, 1],
    )?;
    expect("height (a)", ca.height() as i64, 12 - 9 + 36 - 10)?;

    let candidates = second_polyomino_candidates()?;
    Ok(format!(
        "all worked values exact; {} polyominoes realize the second example's bounces and area 15",
        candidates.len()
    ))
}

fn criterion_4() -> Check {
    let mut count = 0;
    for sh in shapes(5, 4) {
        let (n, d) = (sh.n, sh.d);
        let s = qt_schroder(n, d).map_err(fail)?;
        let others = [
            ("f_cti", f_cti(n, d)),
            ("f_itc", f_itc(n, d)),
            ("egge_sum", egge_sum(n, d)),
            ("itc_sum", itc_sum(n, d)),
        ];
        for (label, p) in others {
            let p = p.map_err(fail)?;
            if p != s {
                return Err(format!(
                    "{label} differs from qt_schroder on {sh}: {} vs {}",
                    p.to_latex(),
                    s.to_latex()
                ));
            }
        }
        count += 1;
    }
    Ok(format!("five methods agree on {count} shapes"))
}

fn criterion_5() -> Check {
    for sh in shapes(5, 4) {
        let s = qt_schroder(sh.n, sh.d).map_err(fail)?;
        if s != s.swap_qt() {
            return Err(format!("qt_schroder on {sh} is not symmetric"));
        }
    }
    Ok("symmetric on 25 shapes".into())
}

fn criterion_6() -> Check {
    let exec = Execution::default();
    for sh in shapes(5, 4) {
        let (n, d) = (sh.n, sh.d);
        let configs = enumerate_sorted_recurrent(sh);
        let image: BTreeSet<ItcSequence> = itc_image(sh, &configs, exec)
            .map_err(fail)?
            .into_iter()
            .collect();
        let listed: BTreeSet<ItcSequence> = enumerate_itc_sequences(n, d).into_iter().collect();
        if image != listed {
            return Err(format!(
                "ITC image on {sh}: {} sequences, enumeration lists {}",
                image.len(),
                listed.len()
            ));
        }
        expect(
            &format!("count_itc{sh}"),
            BigUint::from(listed.len()),
            count_itc(n, d),
        )?;
        let by_k: BigUint = (1..=n + 1).map(|k| count_itc_k(n, d, k)).sum();
        expect(&format!("sum over k on {sh}"), by_k, count_ehkk(n, d))?;
        for (i, block) in itc_sequences_by_length(n, d).iter().enumerate() {
            let k = i + 1;
            expect(
                &format!("length {k} on {sh}"),
                BigUint::from(block.len()),
                count_itc_k(n, d, k),
            )?;
        }
    }
    let seq = |b: &[u32], a: &[u32]| ItcSequence::new(b.to_vec(), a.to_vec());
    let printed: Vec<Vec<ItcSequence>> = vec![
        vec![seq(&[2], &[2])],
        vec![
            seq(&[0, 2], &[2, 0]),
            seq(&[1, 1], &[2, 0]),
            seq(&[2, 0], &[1, 1]),
            seq(&[1, 1], &[1, 1]),
            seq(&[0, 2], &[1, 1]),
        ],
        vec![
            seq(&[1, 0, 1], &[1, 1, 0]),
            seq(&[0, 1, 1], &[1, 1, 0]),
            seq(&[0, 0, 2], &[1, 1, 0]),
        ],
    ];
    let by_len: Vec<BTreeSet<ItcSequence>> = itc_sequences_by_length(2, 2)
        .into_iter()
        .map(|b| b.into_iter().collect())
        .collect();
    let printed: Vec<BTreeSet<ItcSequence>> = printed
        .into_iter()
        .map(|b| b.into_iter().collect())
        .collect();
    expect("ITC_2,2 by length", by_len, printed)?;
    expect("itc(2,2)", count_itc(2, 2), BigUint::from(9u32))?;
    Ok("image, counts and the 1/5/3 split of ITC_2,2 hold".into())
}

fn criterion_7() -> Check {
    let mut total = 0usize;
    for sh in shapes(4, 3) {
        for w in enumerate_words(sh.n, sh.d) {
            let valid = sts(&w).map_err(fail)?.is_valid();
            if valid != w.is_schroder() {
                return Err(format!("{w}: polyomino valid {valid}"));
            }
            total += 1;
        }
    }
    Ok(format!("{total} words"))
}

fn criterion_8() -> Check {
    let mut total = 0usize;
    for sh in shapes(5, 4) {
        let (n, d) = (sh.n as i64, sh.d as i64);
        let edges = binomial(n + d, 2) - binomial(d, 2);
        let edges = i64::try_from(edges).map_err(fail)?;
        for c in enumerate_sorted_recurrent(sh) {
            let p = from_config(sh, &c).map_err(fail)?;
            let cti = topple_cti(sh, &c).map_err(fail)?;
            let itc = topple_itc(sh, &c).map_err(fail)?;
            let cb = cti_bounce(&p).map_err(fail)?;
            let ib = itc_bounce(&p).map_err(fail)?;
            if cb.normalized() != normalize_sizes(&cti.sizes()) {
                return Err(format!(
                    "{c} on {sh}: ctiBounce {:?} vs {:?}",
                    cb.sizes,
                    cti.sizes()
                ));
            }
            if ib.normalized() != normalize_sizes(&itc.sizes()) {
                return Err(format!(
                    "{c} on {sh}: itcBounce {:?} vs {:?}",
                    ib.sizes,
                    itc.sizes()
                ));
            }
            let formula = p.area() as i64 - (n + d) + edges;
            if c.height() as i64 != formula {
                return Err(format!(
                    "{c} on {sh}: height {} vs area formula {formula}",
                    c.height()
                ));
            }
            total += 1;
        }
    }
    Ok(format!("{total} configurations"))
}

fn criterion_9() -> Check {
    let exec = Execution::default();
    for sh in shapes(4, 3) {
        let (n, d) = (sh.n as i64, sh.d as i64);
        let rep = verify_cycle_lemma(sh, exec).map_err(fail)?;
        if let Some(f) = rep.failure {
            return Err(format!("{sh}: {f}"));
        }
        let qs = binomial(2 * n + d, n) * binomial(n + d, n);
        expect(
            &format!("quasi-stable count on {sh}"),
            BigUint::from(rep.quasistable),
            qs.clone(),
        )?;
        expect(
            &format!("formula on {sh}"),
            count_quasistable_nonneg(sh.n, sh.d),
            qs.clone(),
        )?;
        let quotient = qs / BigUint::from((n + 1) as u64);
        let enumerated = enumerate_sorted_recurrent(sh).len();
        expect(
            &format!("quotient on {sh}"),
            BigUint::from(enumerated),
            quotient.clone(),
        )?;
        expect(
            &format!("count on {sh}"),
            sorted_recurrent_count(sh.n, sh.d).map_err(fail)?,
            quotient,
        )?;
        expect(&format!("classes on {sh}"), rep.recurrent, enumerated)?;
    }
    Ok("partition into classes of size n+1, one recurrent each, on 16 shapes".into())
}

/// Words of the interval `[lo, up]` under `le`.
fn interval(
    all: &[SchroderWord],
    lo: &SchroderWord,
    up: &SchroderWord,
    le: fn(&SchroderWord, &SchroderWord) -> bool,
) -> BTreeSet<String> {
    all.iter()
        .filter(|w| le(lo, w) && le(w, up))
        .map(|w| w.to_string())
        .collect()
}

#[derive(Debug, PartialEq)]
struct IntervalFailure {
    shape: (usize, usize),
    sequence: String,
    fiber: usize,
    interval: usize,
}

/// First ITC sequence whose fiber differs from its interval under `le`.
fn first_interval_failure(
    le: fn(&SchroderWord, &SchroderWord) -> bool,
) -> Result<Option<IntervalFailure>, String> {
    let exec = Execution::default();
    for sh in shapes(4, 3) {
        let fibers = itc_fibers(sh, exec).map_err(fail)?;
        let all = enumerate_schroder_words(sh.n, sh.d);
        for seq in enumerate_itc_sequences(sh.n, sh.d) {
            let fiber = fibers.get(&seq).cloned().unwrap_or_default();
            let (lo, up) = extremal_words(&seq).map_err(fail)?;
            let iv = interval(&all, &lo, &up, le);
            if iv != fiber {
                return Ok(Some(IntervalFailure {
                    shape: (sh.n, sh.d),
                    sequence: seq.to_string(),
                    fiber: fiber.len(),
                    interval: iv.len(),
                }));
            }
        }
    }
    Ok(None)
}

/// The hexagon part and the fiber-as-product check, which must hold.
fn criterion_10_supporting() -> Result<(), String> {
    for a in 0..=4 {
        for b in 0..=4 {
            for c in 0..=4 {
                if hexagon_shuffle_gf(a, b, c) != q_multinomial(a, b, c) {
                    return Err(format!(
                        "hexagon gf differs from q-multinomial at ({a},{b},{c})"
                    ));
                }
            }
        }
    }
    let exec = Execution::default();
    for sh in shapes(4, 3) {
        for (seq, fiber) in itc_fibers(sh, exec).map_err(fail)? {
            let product: BTreeSet<String> = hexagon_fiber(&seq)
                .map_err(fail)?
                .iter()
                .map(|w| w.to_string())
                .collect();
            if product != fiber {
                return Err(format!("fiber of {seq} on {sh} is not its hexagon product"));
            }
        }
    }
    Ok(())
}

/// Outcome of criterion 10 and whether it is the documented one.
fn criterion_10() -> (Check, bool) {
    if let Err(e) = criterion_10_supporting() {
        return (Err(e), false);
    }
    let (triangle, region) = match (
        first_interval_failure(triangle_le),
        first_interval_failure(region_le),
    ) {
        (Ok(t), Ok(r)) => (t, r),
        (Err(e), _) | (_, Err(e)) => return (Err(e), false),
    };
    let documented_triangle = IntervalFailure {
        shape: (1, 1),
        sequence: "[(1),(1)]".into(),
        fiber: 2,
        interval: 3,
    };
    let documented_region = IntervalFailure {
        shape: (3, 1),
        sequence: "[(1,0),(2,1)]".into(),
        fiber: 6,
        interval: 8,
    };
    match (triangle, region) {
        (None, None) => (Ok("every fiber is its interval".into()), false),
        (t, r) => {
            let known =
                t.as_ref() == Some(&documented_triangle) && r.as_ref() == Some(&documented_region);
            let msg = format!(
                "fiber != interval; lower-triangle order: {t:?}; region order: {r:?}; \
                 hexagon gf = q-multinomial for a,b,c <= 4 and every fiber is its hexagon product"
            );
            (Err(msg), known)
        }
    }
}

fn criterion_11() -> Check {
    for n in 1..=5 {
        let pts = default_points(n, 5);
        let rep = nabla_symmetry_check(n, &pts).map_err(fail)?;
        if rep.points.len() < 5 || !rep.all_ok() {
            return Err(format!("identity fails for N = {n}: {:?}", rep.points));
        }
    }
    let one = BigRational::from_integer(BigInt::from(1));
    let mu = Partition::new(vec![1]).map_err(fail)?;
    for (q, t, z) in default_points(1, 5) {
        let got = w_weight(&mu, &q, &t, &z).map_err(fail)?;
        expect("N = 1 closed form", got, &one + &z)?;
    }
    Ok("N <= 5 at 5 exact points each, both orientations; N = 1 gives 1 + z".into())
}

fn random_config(rng: &mut ChaCha8Rng, sh: SplitGraphShape) -> Configuration {
    let kmax = 3 * sh.clique_degree();
    let imax = 3 * sh.independent_degree();
    Configuration::new(
        (0..sh.n).map(|_| rng.gen_range(0..=kmax)).collect(),
        (0..sh.d).map(|_| rng.gen_range(0..=imax)).collect(),
    )
}

fn random_compact(rng: &mut ChaCha8Rng, sh: SplitGraphShape) -> ExtendedConfiguration {
    let (n, d) = (sh.n as i64, sh.d as i64);
    let base_k = rng.gen_range(-20..=20);
    let base_i = rng.gen_range(-20..=20);
    let mut clique: Vec<i64> = (0..sh.n)
        .map(|_| base_k + rng.gen_range(0..=n + d + 1))
        .collect();
    let mut independent: Vec<i64> = (0..sh.d)
        .map(|_| base_i + rng.gen_range(0..=n + 1))
        .collect();
    clique.sort_unstable_by(|a, b| b.cmp(a));
    independent.sort_unstable_by(|a, b| b.cmp(a));
    ExtendedConfiguration::new(clique, independent)
}

fn criterion_12() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a4d_7069_6c65);
    for sh in shapes(4, 3) {
        for _ in 0..200 {
            let c = random_config(&mut rng, sh);
            let reference = stabilize(sh, &c).map_err(fail)?;
            let seed: u64 = rng.gen();
            let mut order = ChaCha8Rng::seed_from_u64(seed);
            let other = stabilize_by(sh, &c, |u| order.gen_range(0..u.len())).map_err(fail)?;
            if other != reference {
                return Err(format!("stabilization of {c} on {sh} depends on order"));
            }
        }
    }
    for sh in shapes(5, 4) {
        for c in enumerate_sorted_recurrent(sh) {
            let w = phi_inv(&c).map_err(fail)?;
            if phi(&w) != c {
                return Err(format!("phi(phi_inv({c})) != {c}"));
            }
        }
        for w in enumerate_schroder_words(sh.n, sh.d) {
            if phi_inv(&phi(&w)).map_err(fail)? != w {
                return Err(format!("phi_inv(phi({w})) != {w}"));
            }
            let m = mirror(w.word());
            if !m.is_schroder() || mirror(&m) != *w.word() {
                return Err(format!("mirror fails on {w}"));
            }
        }
    }
    let mut words = 0usize;
    for sh in shapes(6, 5) {
        for w in enumerate_schroder_words(sh.n, sh.d) {
            if haglund_bounce(&w) != loehr_bounce(&w)
                || haglund_bounce(&w) != antidiagonal_bounce(&w)
            {
                return Err(format!("bounce computations disagree on {w}"));
            }
            words += 1;
        }
    }
    for sh in shapes(4, 3) {
        let mut ops = vec![Operator::Ts, Operator::Tk];
        if sh.d > 0 {
            ops.push(Operator::Ti);
        }
        for _ in 0..200 {
            let u = random_compact(&mut rng, sh);
            for &op in &ops {
                let a = apply(sh, op, &u).map_err(fail)?;
                if apply(sh, op.inverse(), &a).map_err(fail)? != u {
                    return Err(format!("{op:?} has no inverse at {u} on {sh}"));
                }
                if a != apply_by_definition(sh, op, &u).map_err(fail)? {
                    return Err(format!("{op:?} closed form differs at {u} on {sh}"));
                }
            }
            if !identity_check(sh, &u).map_err(fail)? {
                return Err(format!("identity or commutation fails at {u} on {sh}"));
            }
        }
    }
    let tk = apply(shape(2, 2), Operator::Tk, &"3,3;2,2".parse().map_err(fail)?).map_err(fail)?;
    expect("T_K(3,3;2,2)", tk.to_string(), "4,-1;3,3".into())?;
    Ok(format!(
        "200 stabilization orders per shape, round trips, bounce on {words} words, operator laws"
    ))
}

struct Outcome {
    ok: bool,
    expected_failure: bool,
}

fn report(k: usize, title: &str, budget: Duration, run: impl FnOnce() -> (Check, bool)) -> Outcome {
    let start = Instant::now();
    let (res, expected_failure) = run();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let ok = res.is_ok() && in_time;
    let detail = match &res {
        Ok(s) => s.clone(),
        Err(e) => e.clone(),
    };
    let timing = if in_time {
        format!("{} ms", elapsed.as_millis())
    } else {
        format!(
            "{} ms, over the {} ms budget",
            elapsed.as_millis(),
            budget.as_millis()
        )
    };
    let status = if ok { "PASS" } else { "FAIL" };
    let note = if !ok && expected_failure {
        " [known counterexample]"
    } else {
        ""
    };
    println!("{status} criterion {k}: {title} ({timing}){note}: {detail}");
    Outcome {
        ok,
        expected_failure: expected_failure && res.is_err() && in_time,
    }
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let plain = |f: fn() -> Check| move || (f(), false);
    let outcomes: Vec<Outcome> = vec![
        report(
            1,
            "f_cti(2,2) equals the printed polynomial",
            secs(1),
            plain(criterion_1),
        ),
        report(2, "SortedRec(S_2,2) table", secs(1), plain(criterion_2)),
        report(3, "worked examples", secs(1), plain(criterion_3)),
        report(
            4,
            "five-way identity, n <= 5, d <= 4",
            secs(300),
            plain(criterion_4),
        ),
        report(
            5,
            "q,t-symmetry, n <= 5, d <= 4",
            secs(10),
            plain(criterion_5),
        ),
        report(
            6,
            "ITC sequence image and counts",
            secs(60),
            plain(criterion_6),
        ),
        report(
            7,
            "polyomino validity iff Schroder",
            secs(60),
            plain(criterion_7),
        ),
        report(
            8,
            "bounce sizes and height/area",
            secs(60),
            plain(criterion_8),
        ),
        report(
            9,
            "cycle lemma, n <= 4, d <= 3",
            secs(120),
            plain(criterion_9),
        ),
        report(
            10,
            "ITC fibers as intervals, hexagon gf",
            secs(60),
            criterion_10,
        ),
        report(
            11,
            "partition sum identity at rational points",
            secs(30),
            plain(criterion_11),
        ),
        report(12, "property suites", secs(120), plain(criterion_12)),
    ];
    let passed = outcomes.iter().filter(|o| o.ok).count();
    let known = outcomes.iter().filter(|o| o.expected_failure).count();
    let unexpected = outcomes
        .iter()
        .filter(|o| !o.ok && !o.expected_failure)
        .count();
    println!(
        "{passed} of {} criteria passed, {known} known counterexample, {unexpected} unexpected failures",
        outcomes.len()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
