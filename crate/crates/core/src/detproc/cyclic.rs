//! Cyclic-group generator synthesis: the semisimple-generator procedure
//! (diagonalize, decompose, rotate through components, solve for the change
//! of basis, final conjugation check) and its general variant that also
//! synthesizes a commuting unipotent factor.

use super::certificate::Certificate;
use super::groupchk::{det_poly, is_alg_group, is_commutative_group};
use super::groupdet::{diagonal_conjugates_ideal, nilpotency_entries};
use super::instance::{DetInstance, DetectOptions};
use super::ratpoint::{rational_points, PointSearch};
use super::verify::verify_certificate;
use super::{fresh_budget, parse_gens_cyclo, DetError, Verdict};
use crate::arith::{Coeff, CycloNum, Rat};
use crate::decomp::{identity_component, min_primes_binomial_class, DecompError, Decomposition};
use crate::lattice::{generators_of_h, Lattice};
use crate::matgroup::{is_unipotent, Mat};
use crate::poly::{parse_poly, Budget, Ideal, MonomialOrder, Poly, Ring, RingRef};
use num::bigint::BigInt;

pub fn gen_semisimple_cyclic(inst: &DetInstance, opts: &DetectOptions) -> Result<Verdict, DetError> {
    run_cyclic_driver(inst, opts, true)
}

pub fn gen_general_cyclic(inst: &DetInstance, opts: &DetectOptions) -> Result<Verdict, DetError> {
    run_cyclic_driver(inst, opts, false)
}

fn run_cyclic_driver(
    inst: &DetInstance,
    opts: &DetectOptions,
    semisimple_only: bool,
) -> Result<Verdict, DetError> {
    let budget = fresh_budget(opts);
    let ring = inst.ring();
    let gens: Vec<Poly<Rat>> = inst
        .gens
        .iter()
        .map(|s| parse_poly(s, &ring))
        .collect::<Result<_, _>>()?;
    let mut log = vec![];
    // precondition of the procedure: the variety is a commutative group
    if !is_alg_group(&gens, inst.shape, &budget)? {
        return Ok(Verdict::no("variety is not closed under matrix multiplication", log));
    }
    if !is_commutative_group(&gens, inst.shape, &budget)? {
        return Ok(Verdict::no("variety is not a commutative group", log));
    }
    log.push("group and commutativity checks passed".into());
    match run_cyclic::<Rat>(inst, opts, 2, semisimple_only, &mut log) {
        Err(DetError::Decomp(DecompError::NeedsRootsOfUnity(m))) => {
            log.push(format!("retrying over Q(zeta_{m})"));
            run_cyclic::<CycloNum>(inst, opts, m, semisimple_only, &mut log)
        }
        other => other,
    }
}

fn run_cyclic<F: Coeff>(
    inst: &DetInstance,
    opts: &DetectOptions,
    conductor: u32,
    semisimple_only: bool,
    log: &mut Vec<String>,
) -> Result<Verdict, DetError> {
    let budget = fresh_budget(opts);
    let ring = inst.ring();
    let d = inst.dim();
    let gens: Vec<Poly<F>> = inst
        .gens
        .iter()
        .map(|s| parse_poly(s, &ring))
        .collect::<Result<_, _>>()?;
    let gens_rat: Vec<Poly<Rat>> = inst
        .gens
        .iter()
        .map(|s| parse_poly(s, &ring))
        .collect::<Result<_, _>>()?;
    let gens_cyc = parse_gens_cyclo(&inst.gens, &ring)?;
    let input_ideal = Ideal::new(ring.clone(), gens.clone());

    // the ideal of diagonal conjugates (computed over Q, then embedded)
    let j_rat = diagonal_conjugates_ideal(&gens_rat, d, &budget)?;
    let j_ideal: Ideal<F> = Ideal::new(
        ring.clone(),
        j_rat
            .gens()
            .iter()
            .map(|g| g.map_coeffs(|c| F::from_rat(c)))
            .collect(),
    );
    let dec: Decomposition<F> = min_primes_binomial_class(&j_ideal, conductor, &budget)?;
    log.push(format!("diagonal-conjugates ideal has {} components", dec.components.len()));
    let p0 = match identity_component(&dec) {
        Ok(p0) => p0,
        Err(DecompError::NoIdentityComponent) => {
            return Ok(Verdict::no("no component of the diagonal ideal passes through the identity", log.clone()))
        }
        Err(e) => return Err(e.into()),
    };
    // the component's lattice on the diagonal coordinates
    let lat0 = component_diag_lattice(&p0, d)?;
    let base = generators_of_h(&lat0, 1)?.remove(0);
    let base: Vec<F> = base
        .iter()
        .map(|c| {
            c.to_rat()
                .map(|r| F::from_rat(&r))
                .ok_or_else(|| DetError::Input("identity component produced torsion entries".into()))
        })
        .collect::<Result<_, _>>()?;

    let q_list: Vec<u32> = match inst.q_hint {
        Some(q) => vec![q],
        None => (1..=dec.components.len() as u32).collect(),
    };
    let mut line_failures = vec![];
    for q_cand in &q_list {
        let q_cand = *q_cand;
        for twist in twist_exponents(q_cand, d) {
            let dq_diag: Option<Vec<F>> = build_twisted_diag(&base, &twist, q_cand, conductor);
            let Some(dq_diag) = dq_diag else { continue };
            let dq = Mat::diagonal(dq_diag.clone());
            // Line 6: rotated components must all be components
            let mut rotation_ok = true;
            let mut rotated: Vec<Ideal<F>> = vec![];
            let mut power = dq.clone();
            for _i in 1..=q_cand {
                let moved = scale_ideal_by_diag(&p0, &power)?;
                if !dec_contains(&dec, &moved, &budget)? {
                    rotation_ok = false;
                    break;
                }
                rotated.push(moved);
                power = power.mul(&dq);
            }
            if !rotation_ok {
                line_failures.push(format!("q={q_cand}: rotated component left the decomposition"));
                continue;
            }
            // Line 7
            let mut i_q = rotated[0].clone();
            for r in &rotated[1..] {
                i_q = i_q.intersect(r, &budget)?;
            }
            // Line 8: J equals the intersection of all permutation conjugates
            let mut inter: Option<Ideal<F>> = None;
            for perm in permutations(d) {
                let conj = permute_matrix_ideal(&i_q, &perm)?;
                inter = Some(match inter {
                    None => conj,
                    Some(acc) => acc.intersect(&conj, &budget)?,
                });
            }
            let inter = inter.expect("at least the identity permutation");
            if !j_ideal.equal(&inter, &MonomialOrder::GrevLex, &budget)? {
                line_failures.push(format!("q={q_cand}: permutation-intersection check failed"));
                continue;
            }
            log.push(format!("q={q_cand}: component rotation and permutation checks passed"));
            // Line 9: J_1 and a change of basis
            let j1 = line9_ideal(&gens, &dq, d, &budget)?;
            log.push(format!("J_1 has {} generators", j1.gens().len()));
            if semisimple_only {
                match finish_semisimple(
                    inst, opts, &input_ideal, &gens_cyc, &i_q, &dq, &lat0, &j1, conductor, log,
                )? {
                    FinishOutcome::Yes(cert) => return Ok(Verdict::yes(cert, log.clone())),
                    FinishOutcome::No(reason) => return Ok(Verdict::no(reason, log.clone())),
                    FinishOutcome::Unknown(reason) => {
                        return Ok(Verdict::unknown(reason, false, log.clone()))
                    }
                }
            } else {
                match finish_general(
                    inst, opts, &gens, &gens_cyc, &dq, &j1, conductor, log,
                )? {
                    FinishOutcome::Yes(cert) => return Ok(Verdict::yes(cert, log.clone())),
                    FinishOutcome::No(reason) => return Ok(Verdict::no(reason, log.clone())),
                    FinishOutcome::Unknown(reason) => {
                        return Ok(Verdict::unknown(reason, false, log.clone()))
                    }
                }
            }
        }
    }
    Ok(Verdict::no(
        format!(
            "no admissible rotation (tried q in {:?}): {}",
            q_list,
            line_failures.join("; ")
        ),
        log.clone(),
    ))
}

enum FinishOutcome {
    Yes(Certificate),
    No(String),
    Unknown(String),
}

#[allow(clippy::too_many_arguments)]
fn finish_semisimple<F: Coeff>(
    inst: &DetInstance,
    opts: &DetectOptions,
    input_ideal: &Ideal<F>,
    gens_cyc: &[Poly<CycloNum>],
    i_q: &Ideal<F>,
    dq: &Mat<F>,
    _lat0: &Lattice,
    j1: &Ideal<F>,
    conductor: u32,
    log: &mut Vec<String>,
) -> Result<FinishOutcome, DetError> {
    let budget = fresh_budget(opts);
    let d = inst.dim();
    let p_ring = j1.ring().clone();
    let det = det_poly::<F>(&p_ring, d, &|i, j| {
        p_ring
            .var_index(&format!("p{}{}", i + 1, j + 1))
            .unwrap()
    });
    let mut search = PointSearch::defaults(conductor, opts.point_search_bound);
    search.nonzero = Some(&det);
    let points = rational_points(j1, &search, 8, &budget)?;
    if points.is_empty() {
        return Ok(FinishOutcome::Unknown(
            "no explicit point found on the change-of-basis locus".into(),
        ));
    }
    for point in &points {
        let p_tilde = point_to_matrix(&p_ring, point, d);
        let Some(p_tilde_inv) = p_tilde.inverse() else { continue };
        // Line 10: I = P I_q P^-1
        let conj = conjugate_ideal_by(i_q, &p_tilde_inv, &p_tilde)?;
        if !input_ideal.equal(&conj, &MonomialOrder::GrevLex, &budget)? {
            log.push("a candidate change of basis failed the final conjugation check".into());
            continue;
        }
        let m = p_tilde.mul(dq).mul(&p_tilde_inv);
        log.push(format!("generator M = {m:?}"));
        let cert = assemble_group_cert(
            inst,
            &p_tilde,
            &p_tilde_inv,
            dq,
            &Mat::identity(d),
            &m,
            conductor,
        )?;
        let report = verify_certificate(gens_cyc, &cert, opts.verify_n, &budget)?;
        if report.passed {
            let mut cert = cert;
            cert.verify = Some(report);
            return Ok(FinishOutcome::Yes(cert));
        }
        if let Some(fail) = report.first_failure() {
            log.push(format!("witness failed verification `{}`: {}", fail.name, fail.detail));
        }
    }
    Ok(FinishOutcome::No(
        "explicit points found, but the final conjugation check rejected them".into(),
    ))
}

#[allow(clippy::too_many_arguments)]
fn finish_general<F: Coeff>(
    inst: &DetInstance,
    opts: &DetectOptions,
    gens: &[Poly<F>],
    gens_cyc: &[Poly<CycloNum>],
    dq: &Mat<F>,
    j1: &Ideal<F>,
    conductor: u32,
    log: &mut Vec<String>,
) -> Result<FinishOutcome, DetError> {
    let budget = fresh_budget(opts);
    let ring = gens[0].ring().clone();
    let d = inst.dim();
    // the unipotent slice must be a commutative group of dimension <= 1
    let gens_rat: Vec<Poly<Rat>> = inst
        .gens
        .iter()
        .map(|s| parse_poly(s, &ring))
        .collect::<Result<_, _>>()?;
    let mut slice_rat = gens_rat.clone();
    for e in nilpotency_entries(&ring, d) {
        slice_rat.push(e);
    }
    if !is_alg_group(&slice_rat, inst.shape, &budget)? {
        return Ok(FinishOutcome::No(
            "unipotent slice is not closed under multiplication".into(),
        ));
    }
    if !is_commutative_group(&slice_rat, inst.shape, &budget)? {
        return Ok(FinishOutcome::No("unipotent slice is not commutative".into()));
    }
    let logs = super::groupdet::unipotent_slice_logs(&Ideal::new(ring.clone(), gens_rat), d, 1, &budget)?;
    if logs.is_none() {
        return Ok(FinishOutcome::No(
            "unipotent slice is not one-dimensional".into(),
        ));
    }
    log.push("unipotent slice checks passed".into());
    // H: conjugates with a bidiagonal unipotent shape
    let p_names: Vec<String> = (0..d)
        .flat_map(|i| (0..d).map(move |j| format!("p{}{}", i + 1, j + 1)))
        .collect();
    let q_names: Vec<String> = (0..d)
        .flat_map(|i| (0..d).map(move |j| format!("q{}{}", i + 1, j + 1)))
        .collect();
    let mut vars = p_names.clone();
    vars.extend(q_names.clone());
    vars.extend(ring.vars().iter().cloned());
    let big = Ring::new(vars);
    let mut h_gens: Vec<Poly<F>> = vec![];
    // F_i(P X Q)
    let images = conj_images_generic::<F>(&big, &ring, &p_names, &q_names, d);
    for g in gens {
        h_gens.push(g.substitute(&images));
    }
    for rel in pq_relations_generic::<F>(&big, &p_names, &q_names, d) {
        h_gens.push(rel);
    }
    for i in 0..d {
        for j in 0..d {
            let v = Poly::var_named(&big, &ring.vars()[i * d + j]);
            if i == j {
                h_gens.push(v.sub(&Poly::one(&big)));
            } else if j != i + 1 {
                h_gens.push(v);
            }
        }
    }
    // J_1 constraints on P
    for g in j1.gens() {
        h_gens.push(g.transfer(&big)?);
    }
    let system = Ideal::new(big.clone(), h_gens);
    let det = det_poly::<F>(&big, d, &|i, j| big.var_index(&p_names[i * d + j]).unwrap());
    let mut search = PointSearch::defaults(conductor, opts.point_search_bound);
    search.nonzero = Some(&det);
    let points = rational_points(&system, &search, 8, &budget)?;
    if points.is_empty() {
        return Ok(FinishOutcome::Unknown(
            "no explicit point found on the combined locus".into(),
        ));
    }
    for point in &points {
        let p_tilde = {
            let mut m = Mat::<F>::zeros(d, d);
            for i in 0..d {
                for j in 0..d {
                    m[(i, j)] = point[big.var_index(&p_names[i * d + j]).unwrap()].clone();
                }
            }
            m
        };
        let Some(p_tilde_inv) = p_tilde.inverse() else { continue };
        let mut x_tilde = Mat::<F>::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                x_tilde[(i, j)] = point[big.var_index(&ring.vars()[i * d + j]).unwrap()].clone();
            }
        }
        if !is_unipotent(&x_tilde) || !x_tilde.commutes_with(dq) {
            continue;
        }
        let m = p_tilde.mul(&dq.mul(&x_tilde)).mul(&p_tilde_inv);
        let cert = assemble_group_cert(inst, &p_tilde, &p_tilde_inv, dq, &x_tilde, &m, conductor)?;
        let report = verify_certificate(gens_cyc, &cert, opts.verify_n, &budget)?;
        if report.passed {
            let mut cert = cert;
            cert.verify = Some(report);
            return Ok(FinishOutcome::Yes(cert));
        }
        if let Some(fail) = report.first_failure() {
            log.push(format!("witness failed verification `{}`: {}", fail.name, fail.detail));
        }
    }
    Ok(FinishOutcome::Unknown(
        "explicit points found but none produced a verifiable generator".into(),
    ))
}

fn assemble_group_cert<F: Coeff>(
    inst: &DetInstance,
    p_tilde: &Mat<F>,
    p_tilde_inv: &Mat<F>,
    dq: &Mat<F>,
    u: &Mat<F>,
    m: &Mat<F>,
    conductor: u32,
) -> Result<Certificate, DetError> {
    let to_c = |mm: &Mat<F>| mm.map(|c| c.to_cyclo());
    let dq_c = to_c(dq);
    let lat = crate::lattice::relation_lattice_of_tuples(&[dq_c.diag()])
        .ok_or_else(|| DetError::Input("diagonal entries outside the analyzable class".into()))?;
    Ok(Certificate {
        kind: inst.mode.as_str().to_string(),
        conductor,
        p: to_c(p_tilde_inv),
        p_inv: to_c(p_tilde),
        lattice: lat,
        selector: None,
        d_list: vec![dq_c],
        u_list: vec![to_c(u)],
        v: vec![],
        m_list: vec![to_c(m)],
        templates: vec![],
        verify: None,
    })
}

/// Lattice of a prime-component ideal on the diagonal coordinates.
fn component_diag_lattice<F: Coeff>(p0: &Ideal<F>, d: usize) -> Result<Lattice, DetError> {
    let ring = p0.ring().clone();
    let dd = ring.arity();
    let diag_idx: Vec<usize> = (0..d).map(|i| i * d + i).collect();
    let mut rows: Vec<Vec<BigInt>> = vec![];
    for g in p0.gens() {
        if g.num_terms() != 2 {
            continue;
        }
        let exps: Vec<Vec<i64>> = g
            .terms()
            .map(|(m, _)| (0..dd).map(|k| m.0[k] as i64).collect())
            .collect();
        // binomials on the diagonal slice only
        let on_diag = exps.iter().all(|e| {
            e.iter()
                .enumerate()
                .all(|(k, &v)| v == 0 || diag_idx.contains(&k))
        });
        if !on_diag {
            continue;
        }
        rows.push(
            diag_idx
                .iter()
                .map(|&k| BigInt::from(exps[0][k] - exps[1][k]))
                .collect(),
        );
    }
    Ok(Lattice::from_rows(d, rows))
}

/// Exponent twists for the component rotation: q = 1 gives the trivial
/// twist; otherwise all vectors in {0..q-1}^d (capped) whose entries are
/// not all zero, trivial first.
fn twist_exponents(q: u32, d: usize) -> Vec<Vec<u32>> {
    if q == 1 {
        return vec![vec![0; d]];
    }
    let total = (q as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    if total > 4096 {
        return vec![];
    }
    let mut out = vec![];
    let mut cur = vec![0u32; d];
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            cur[i] += 1;
            if cur[i] < q {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

fn build_twisted_diag<F: Coeff>(
    base: &[F],
    twist: &[u32],
    q_cand: u32,
    conductor: u32,
) -> Option<Vec<F>> {
    if q_cand > 1 && conductor % q_cand != 0 {
        return None;
    }
    let mut out = vec![];
    for (b, &e) in base.iter().zip(twist) {
        let z = if e == 0 {
            F::one()
        } else {
            F::root_of_unity(conductor, (e as i64) * (conductor / q_cand) as i64)?
        };
        out.push(b.mul(&z));
    }
    Some(out)
}

/// {f(D X)} for diagonal D: scales row variables.
fn scale_ideal_by_diag<F: Coeff>(ideal: &Ideal<F>, diag: &Mat<F>) -> Result<Ideal<F>, DetError> {
    let ring = ideal.ring().clone();
    let dd = ring.arity();
    let d = diag.nrows();
    let images: Vec<Poly<F>> = (0..dd)
        .map(|k| {
            let row = k / d;
            Poly::var(&ring, k).scale(&diag[(row, row)])
        })
        .collect();
    Ok(Ideal::new(
        ring,
        ideal.gens().iter().map(|g| g.substitute(&images)).collect(),
    ))
}

fn dec_contains<F: Coeff>(
    dec: &Decomposition<F>,
    candidate: &Ideal<F>,
    budget: &Budget,
) -> Result<bool, DetError> {
    for comp in &dec.components {
        if comp.equal(candidate, &MonomialOrder::GrevLex, budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Conjugation by a permutation matrix: substitutes x_ij -> x_{s(i) s(j)}.
fn permute_matrix_ideal<F: Coeff>(ideal: &Ideal<F>, perm: &[usize]) -> Result<Ideal<F>, DetError> {
    let ring = ideal.ring().clone();
    let dd = ring.arity();
    let d = perm.len();
    let images: Vec<Poly<F>> = (0..dd)
        .map(|k| {
            let (i, j) = (k / d, k % d);
            Poly::var(&ring, perm[i] * d + perm[j])
        })
        .collect();
    Ok(Ideal::new(
        ring,
        ideal.gens().iter().map(|g| g.substitute(&images)).collect(),
    ))
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..d {
        let mut next = vec![];
        for p in &out {
            for v in 0..d {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

/// Line 9: <F_i(Q Dq P), PQ - Id> ∩ F[P].
fn line9_ideal<F: Coeff>(
    gens: &[Poly<F>],
    dq: &Mat<F>,
    d: usize,
    budget: &Budget,
) -> Result<Ideal<F>, DetError> {
    let p_names: Vec<String> = (0..d)
        .flat_map(|i| (0..d).map(move |j| format!("p{}{}", i + 1, j + 1)))
        .collect();
    let q_names: Vec<String> = (0..d)
        .flat_map(|i| (0..d).map(move |j| format!("q{}{}", i + 1, j + 1)))
        .collect();
    let mut vars = q_names.clone();
    vars.extend(p_names.clone());
    let big = Ring::new(vars);
    // images x_ij -> (Q Dq P)_ij = sum_k q_ik dq_k p_kj
    let images: Vec<Poly<F>> = (0..d * d)
        .map(|idx| {
            let (i, j) = (idx / d, idx % d);
            let mut e = Poly::zero(&big);
            for k in 0..d {
                let q = Poly::var_named(&big, &q_names[i * d + k]);
                let p = Poly::var_named(&big, &p_names[k * d + j]);
                e = e.add(&q.mul(&p).scale(&dq[(k, k)]));
            }
            e
        })
        .collect();
    let mut big_gens: Vec<Poly<F>> = gens
        .iter()
        .map(|g| g.substitute(&images))
        .collect();
    for rel in pq_relations_generic::<F>(&big, &p_names, &q_names, d) {
        big_gens.push(rel);
    }
    let drop: Vec<usize> = (0..d * d).collect(); // the q block comes first
    let p_ring = Ring::new(p_names);
    Ideal::new(big, big_gens)
        .eliminate_into(&drop, &p_ring, budget)
        .map_err(DetError::from)
}

fn point_to_matrix<F: Coeff>(p_ring: &RingRef, point: &[F], d: usize) -> Mat<F> {
    let mut m = Mat::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let idx = p_ring
                .var_index(&format!("p{}{}", i + 1, j + 1))
                .expect("parameter name");
            m[(i, j)] = point[idx].clone();
        }
    }
    m
}

/// {f(A X B)} for concrete matrices: the ideal of the conjugated variety.
fn conjugate_ideal_by<F: Coeff>(
    ideal: &Ideal<F>,
    a: &Mat<F>,
    b: &Mat<F>,
) -> Result<Ideal<F>, DetError> {
    let ring = ideal.ring().clone();
    let d = a.nrows();
    let mut images = vec![Poly::zero(&ring); d * d];
    for i in 0..d {
        for j in 0..d {
            let mut e = Poly::zero(&ring);
            for k in 0..d {
                for l in 0..d {
                    let c = a[(i, k)].mul(&b[(l, j)]);
                    if !c.is_zero() {
                        e = e.add(&Poly::var(&ring, k * d + l).scale(&c));
                    }
                }
            }
            images[i * d + j] = e;
        }
    }
    Ok(Ideal::new(
        ring,
        ideal.gens().iter().map(|g| g.substitute(&images)).collect(),
    ))
}

fn conj_images_generic<F: Coeff>(
    cring: &RingRef,
    x_ring: &RingRef,
    p_names: &[String],
    q_names: &[String],
    d: usize,
) -> Vec<Poly<F>> {
    let mut images = vec![Poly::zero(cring); d * d];
    for i in 0..d {
        for j in 0..d {
            let mut e = Poly::zero(cring);
            for k in 0..d {
                for l in 0..d {
                    let p = Poly::var_named(cring, &p_names[i * d + k]);
                    let x = Poly::var_named(cring, &x_ring.vars()[k * d + l]);
                    let q = Poly::var_named(cring, &q_names[l * d + j]);
                    e = e.add(&p.mul(&x).mul(&q));
                }
            }
            images[i * d + j] = e;
        }
    }
    images
}

fn pq_relations_generic<F: Coeff>(
    ring: &RingRef,
    p_names: &[String],
    q_names: &[String],
    d: usize,
) -> Vec<Poly<F>> {
    let mut out = vec![];
    for i in 0..d {
        for j in 0..d {
            let mut e = Poly::zero(ring);
            for k in 0..d {
                let p = Poly::var_named(ring, &p_names[i * d + k]);
                let q = Poly::var_named(ring, &q_names[k * d + j]);
                e = e.add(&p.mul(&q));
            }
            if i == j {
                e = e.sub(&Poly::one(ring));
            }
            out.push(e);
        }
    }
    out
}
