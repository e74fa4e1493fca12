//! Group determination: is the variety the closure of an s-generated
//! commutative matrix group? Diagonal presentations are decided exactly via
//! the lattice correspondence; full matrix presentations search for a
//! diagonalizing change of basis with the containment machinery.

use super::certificate::Certificate;
use super::closure::lattice_ideal;
use super::containment::{equality_conditions, ContainmentProblem};
use super::groupchk::{det_poly, is_alg_group, is_commutative_group};
use super::instance::{DetInstance, DetectOptions, Shape};
use super::orbitdet::torsion_conductor;
use super::ratpoint::{rational_point, PointSearch};
use super::verify::verify_certificate;
use super::{fresh_budget, parse_gens_cyclo, DetError, Verdict};
use crate::arith::{Coeff, CycloNum, Rat};
use crate::lattice::{
    enumerate_lattices_exhaustive, generators_of_h, lattice_from_polys, lattices_from_seeds,
    Lattice,
};
use crate::matgroup::{nil_exp, Mat};
use crate::poly::{parse_poly, Budget, Ideal, MonomialOrder, Poly, Ring, RingRef};
use num::bigint::BigInt;
use num::Zero;

pub fn group_det_semisimple(inst: &DetInstance, opts: &DetectOptions) -> Result<Verdict, DetError> {
    match inst.shape {
        Shape::Diagonal { .. } => diagonal_group_det(inst, opts),
        Shape::Matrix { .. } => matrix_group_det_semisimple(inst, opts),
        Shape::Point { .. } => Err(DetError::Input("group mode needs matrix or diagonal shape".into())),
    }
}

/// Diagonal presentations are decided exactly: the variety is a diagonal
/// algebraic group iff its saturated ideal is the lattice ideal of its own
/// exponent lattice, and then s-generation is the elementary-divisor test.
fn diagonal_group_det(inst: &DetInstance, opts: &DetectOptions) -> Result<Verdict, DetError> {
    let budget = fresh_budget(opts);
    let ring = inst.ring();
    let d = inst.dim();
    let gens: Vec<Poly<Rat>> = inst
        .gens
        .iter()
        .map(|s| parse_poly(s, &ring))
        .collect::<Result<_, _>>()?;
    let mut log = vec![];
    let ideal = Ideal::new(ring.clone(), gens.clone());
    let mut prod = Poly::<Rat>::one(&ring);
    for i in 0..d {
        prod = prod.mul(&Poly::var(&ring, i));
    }
    let sat = ideal.saturate(&prod, &budget)?;
    if sat.is_trivial(&budget)? {
        return Ok(Verdict::no("variety has no invertible diagonal points", log));
    }
    let gb = sat.groebner(&MonomialOrder::GrevLex, &budget)?;
    if !gb.iter().all(|p| p.num_terms() <= 2) {
        return Ok(Verdict::no(
            "saturated ideal is not binomial, so the variety is not a diagonal subgroup",
            log,
        ));
    }
    // coefficients must make it a pure difference ideal (a group contains 1)
    let lat = lattice_from_polys(&gb);
    let li = lattice_ideal::<Rat>(&lat, &ring, &budget)?;
    if !sat.equal(&li, &MonomialOrder::GrevLex, &budget)? {
        return Ok(Verdict::no(
            "saturated ideal differs from its exponent-lattice ideal; not a subgroup of the torus",
            log,
        ));
    }
    log.push(format!(
        "diagonal lattice {:?}, elementary divisors {:?}",
        lat.basis_rows(),
        lat.elementary_divisors()
    ));
    if !lat.is_s_generated(inst.s) {
        return Ok(Verdict::no(
            format!(
                "torsion needs {} generators, more than s = {}",
                lat.min_generators().max(1),
                inst.s
            ),
            log,
        ));
    }
    // witness generators
    let tuples = generators_of_h(&lat, inst.s)?;
    let q = torsion_conductor(&lat);
    let d_list: Vec<Mat<CycloNum>> = tuples.iter().map(|t| Mat::diagonal(t.clone())).collect();
    let cert = Certificate {
        kind: inst.mode.as_str().to_string(),
        conductor: q,
        p: Mat::identity(d),
        p_inv: Mat::identity(d),
        lattice: lat,
        selector: None,
        d_list: d_list.clone(),
        u_list: vec![Mat::identity(d); inst.s],
        v: vec![],
        m_list: d_list,
        templates: vec![],
        verify: None,
    };
    let gens_cyc = parse_gens_cyclo(&inst.gens, &ring)?;
    let report = verify_certificate(&gens_cyc, &cert, opts.verify_n, &budget)?;
    if report.passed {
        let mut cert = cert;
        cert.verify = Some(report);
        Ok(Verdict::yes(cert, log))
    } else {
        let why = report
            .first_failure()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .unwrap_or_default();
        Ok(Verdict::unknown(
            format!("witness failed verification ({why})"),
            false,
            log,
        ))
    }
}

/// Full matrix presentation: necessary group/commutativity checks, then a
/// search for P with P^-1 Z P equal to a diagonal lattice group.
fn matrix_group_det_semisimple(
    inst: &DetInstance,
    opts: &DetectOptions,
) -> Result<Verdict, DetError> {
    let budget = fresh_budget(opts);
    let ring = inst.ring();
    let d = inst.dim();
    let gens: Vec<Poly<Rat>> = inst
        .gens
        .iter()
        .map(|s| parse_poly(s, &ring))
        .collect::<Result<_, _>>()?;
    let gens_cyc = parse_gens_cyclo(&inst.gens, &ring)?;
    let mut log = vec![];
    if !is_alg_group(&gens, inst.shape, &budget)? {
        return Ok(Verdict::no("variety is not closed under matrix multiplication", log));
    }
    if !is_commutative_group(&gens, inst.shape, &budget)? {
        return Ok(Verdict::no("variety is not a commutative group", log));
    }
    log.push("group and commutativity checks passed".into());

    // candidate lattices seeded from the diagonal-conjugates ideal
    let diag_ideal = diagonal_conjugates_ideal(&gens, d, &budget)?;
    let diag_ring = diag_ideal.ring().clone();
    let mut seeds: Vec<Vec<BigInt>> = vec![];
    for g in diag_ideal.gens() {
        let exps: Vec<Vec<BigInt>> = g
            .terms()
            .map(|(m, _)| {
                (0..d)
                    .map(|i| BigInt::from(m.0[diag_var_index(&diag_ring, i, d)]))
                    .collect()
            })
            .collect();
        for i in 0..exps.len() {
            for j in i + 1..exps.len() {
                let v: Vec<BigInt> = exps[i].iter().zip(&exps[j]).map(|(a, b)| a - b).collect();
                if v.iter().any(|e| !e.is_zero()) {
                    seeds.push(v);
                }
            }
        }
    }
    let mut lattices = lattices_from_seeds(d, &seeds, d.min(3), inst.s);
    if opts.exhaustive_lattices && (d as i64) * inst.b <= 6 {
        for lat in enumerate_lattices_exhaustive(d, inst.b, inst.s) {
            if !lattices.contains(&lat) {
                lattices.push(lat);
            }
        }
    }
    let mut saw_resource = false;
    for lat in &lattices {
        match try_matrix_group_candidate(inst, opts, &gens, &gens_cyc, lat, &mut log) {
            Ok(Some(cert)) => return Ok(Verdict::yes(cert, log)),
            Ok(None) => {}
            Err(e) if e.is_resource_limit() => saw_resource = true,
            Err(DetError::AnsatzDegreeExceeded) | Err(DetError::Mat(_)) | Err(DetError::Lattice(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(Verdict::unknown(
        "group checks passed but no diagonalizing change of basis was found",
        saw_resource,
        log,
    ))
}

fn try_matrix_group_candidate(
    inst: &DetInstance,
    opts: &DetectOptions,
    gens: &[Poly<Rat>],
    gens_cyc: &[Poly<CycloNum>],
    lat: &Lattice,
    log: &mut Vec<String>,
) -> Result<Option<Certificate>, DetError> {
    let budget = fresh_budget(opts);
    let ring = gens[0].ring().clone();
    let d = inst.dim();
    // combined ring: P entries, Q entries, then the matrix point variables
    let p_names: Vec<String> = (0..d)
        .flat_map(|i| (0..d).map(move |j| format!("p{}{}", i + 1, j + 1)))
        .collect();
    let q_names: Vec<String> = (0..d)
        .flat_map(|i| (0..d).map(move |j| format!("q{}{}", i + 1, j + 1)))
        .collect();
    let mut vars = p_names.clone();
    vars.extend(q_names.clone());
    vars.extend(ring.vars().iter().cloned());
    let cring = Ring::new(vars);
    // sources F(PXQ)
    let images = conjugation_images(&cring, &ring, &p_names, &q_names, d);
    let sources: Vec<Poly<Rat>> = gens
        .iter()
        .map(|g| g.substitute(&images))
        .collect();
    // target: diagonal matrices on the lattice group
    let diag_names: Vec<String> = (0..d).map(|i| ring.vars()[i * d + i].clone()).collect();
    let diag_ring = Ring::new(diag_names.clone());
    let li = lattice_ideal::<Rat>(lat, &diag_ring, &budget)?;
    let mut targets: Vec<Poly<Rat>> = li
        .gens()
        .iter()
        .map(|g| g.transfer(&cring))
        .collect::<Result<_, _>>()?;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                targets.push(Poly::var_named(&cring, &ring.vars()[i * d + j]));
            }
        }
    }
    let point_vars: Vec<usize> = ring
        .vars()
        .iter()
        .map(|v| cring.var_index(v).unwrap())
        .collect();
    let prob = ContainmentProblem { ring: cring.clone(), point_vars, sources, targets };
    let mut cond = equality_conditions(&prob, 0, &budget)?;
    // PQ = Id ties the two parameter blocks together
    {
        let param_ring = cond.ring().clone();
        let mut gens_c = cond.gens().to_vec();
        for e in pq_identity_relations(&param_ring, &p_names, &q_names, d) {
            gens_c.push(e);
        }
        cond = Ideal::new(param_ring, gens_c);
    }
    if cond.is_trivial(&budget)? {
        return Err(DetError::AnsatzDegreeExceeded);
    }
    let q_cond = torsion_conductor(lat);
    let cond_cyc: Ideal<CycloNum> = Ideal::new(
        cond.ring().clone(),
        cond.gens()
            .iter()
            .map(|g| g.map_coeffs(|c| CycloNum::from_rational(c.clone())))
            .collect(),
    );
    let det_p = det_poly::<CycloNum>(cond.ring(), d, &|i, j| {
        cond.ring().var_index(&p_names[i * d + j]).unwrap()
    });
    let mut search = PointSearch::defaults(q_cond, opts.point_search_bound);
    search.nonzero = Some(&det_p);
    let Some(point) = rational_point(&cond_cyc, &search, &budget)? else {
        return Ok(None);
    };
    let pr = cond.ring().clone();
    let mut p_sol = Mat::<CycloNum>::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            p_sol[(i, j)] = point[pr.var_index(&p_names[i * d + j]).unwrap()].clone();
        }
    }
    let Some(p_sol_inv) = p_sol.inverse() else { return Ok(None) };
    let tuples = generators_of_h(lat, inst.s)?;
    let d_list: Vec<Mat<CycloNum>> = tuples.iter().map(|t| Mat::diagonal(t.clone())).collect();
    let m_list: Vec<Mat<CycloNum>> = d_list
        .iter()
        .map(|dm| p_sol.mul(dm).mul(&p_sol_inv))
        .collect();
    let mut cert = Certificate {
        kind: inst.mode.as_str().to_string(),
        conductor: q_cond,
        p: p_sol_inv.clone(),
        p_inv: p_sol.clone(),
        lattice: lat.clone(),
        selector: None,
        d_list,
        u_list: vec![Mat::identity(d); inst.s],
        v: vec![],
        m_list,
        templates: vec![],
        verify: None,
    };
    let report = verify_certificate(gens_cyc, &cert, opts.verify_n, &budget)?;
    if report.passed {
        cert.verify = Some(report);
        Ok(Some(cert))
    } else {
        if let Some(fail) = report.first_failure() {
            log.push(format!(
                "group candidate lattice={:?}: failed `{}`: {}",
                lat.basis_rows(),
                fail.name,
                fail.detail
            ));
        }
        Ok(None)
    }
}

/// Commutative (possibly non-semisimple) group determination: necessary
/// checks first, then candidate changes of basis are tested against the
/// three conditions (triangular commutative image, diagonal slice equal to
/// a lattice group, unipotent log image linear of dimension at most s).
pub fn group_det_commutative(inst: &DetInstance, opts: &DetectOptions) -> Result<Verdict, DetError> {
    if matches!(inst.shape, Shape::Diagonal { .. }) {
        // diagonal groups are semisimple; same exact decision applies
        return diagonal_group_det(inst, opts);
    }
    let budget = fresh_budget(opts);
    let ring = inst.ring();
    let d = inst.dim();
    let gens: Vec<Poly<Rat>> = inst
        .gens
        .iter()
        .map(|s| parse_poly(s, &ring))
        .collect::<Result<_, _>>()?;
    let gens_cyc = parse_gens_cyclo(&inst.gens, &ring)?;
    let mut log = vec![];
    if !is_alg_group(&gens, inst.shape, &budget)? {
        return Ok(Verdict::no("variety is not closed under matrix multiplication", log));
    }
    if !is_commutative_group(&gens, inst.shape, &budget)? {
        return Ok(Verdict::no("variety is not a commutative group", log));
    }
    log.push("group and commutativity checks passed".into());
    // candidate changes of basis: identity first (covers inputs already in
    // upper-triangular form)
    let id: Mat<Rat> = Mat::identity(d);
    let mut saw_resource = false;
    match commutative_candidate(inst, opts, &gens, &gens_cyc, &id, &mut log) {
        Ok(Some(cert)) => return Ok(Verdict::yes(cert, log)),
        Ok(None) => {}
        Err(e) if e.is_resource_limit() => saw_resource = true,
        Err(DetError::AnsatzDegreeExceeded)
        | Err(DetError::Mat(_))
        | Err(DetError::Lattice(_))
        | Err(DetError::Decomp(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(Verdict::unknown(
        "no upper-triangularizing rational change of basis found; the search is incomplete",
        saw_resource,
        log,
    ))
}

/// The three checks for one concrete change of basis P, with witnesses.
fn commutative_candidate(
    inst: &DetInstance,
    opts: &DetectOptions,
    gens: &[Poly<Rat>],
    gens_cyc: &[Poly<CycloNum>],
    p: &Mat<Rat>,
    log: &mut Vec<String>,
) -> Result<Option<Certificate>, DetError> {
    let budget = fresh_budget(opts);
    let ring = gens[0].ring().clone();
    let d = inst.dim();
    let p_inv = p.inverse().ok_or(DetError::Input("singular candidate P".into()))?;
    // conjugated ideal I_P = {F(P X P^-1)}
    let conj = conjugate_matrix_ideal(gens, p, &p_inv)?;
    // (1) upper triangular: every below-diagonal coordinate vanishes on it
    let conj_ideal = Ideal::new(ring.clone(), conj.clone());
    for i in 0..d {
        for j in 0..i {
            let low = Poly::var_named(&ring, &ring.vars()[i * d + j]);
            if !conj_ideal.radical_member(&low, &budget)? {
                return Ok(None);
            }
        }
    }
    // (2) diagonal slice equals a lattice group with at most s generators
    let mut slice_gens = conj.clone();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                slice_gens.push(Poly::var_named(&ring, &ring.vars()[i * d + j]));
            }
        }
    }
    let diag_names: Vec<String> = (0..d).map(|i| ring.vars()[i * d + i].clone()).collect();
    let diag_ring = Ring::new(diag_names);
    let offdiag_idx: Vec<usize> = (0..d * d).filter(|k| k / d != k % d).collect();
    let slice = Ideal::new(ring.clone(), slice_gens)
        .eliminate_into(&offdiag_idx, &diag_ring, &budget)?;
    let mut prod = Poly::<Rat>::one(&diag_ring);
    for i in 0..d {
        prod = prod.mul(&Poly::var(&diag_ring, i));
    }
    let slice_sat = slice.saturate(&prod, &budget)?;
    let slice_gb = slice_sat.groebner(&MonomialOrder::GrevLex, &budget)?;
    if !slice_gb.iter().all(|p| p.num_terms() <= 2) {
        return Ok(None);
    }
    let lat = lattice_from_polys(&slice_gb);
    let li = lattice_ideal::<Rat>(&lat, &diag_ring, &budget)?;
    if !slice_sat.equal(&li, &MonomialOrder::GrevLex, &budget)? || !lat.is_s_generated(inst.s) {
        return Ok(None);
    }
    // (3) logs of the unipotent slice form a linear space of dim <= s
    let nilpotents = unipotent_slice_logs(&conj_ideal, d, inst.s, &budget)?;
    let Some(nilpotents) = nilpotents else { return Ok(None) };
    log.push(format!(
        "triangular form found; lattice divisors {:?}, unipotent dimension {}",
        lat.elementary_divisors(),
        nilpotents.len()
    ));
    // assemble generators: pair diagonal and unipotent parts (Remark-style
    // product combination)
    let tuples = generators_of_h(&lat, inst.s)?;
    let q = torsion_conductor(&lat);
    let p_c: Mat<CycloNum> = p.map(|c| CycloNum::from_rational(c.clone()));
    let p_inv_c: Mat<CycloNum> = p_inv.map(|c| CycloNum::from_rational(c.clone()));
    let mut d_list = vec![];
    let mut u_list = vec![];
    let mut m_list = vec![];
    for (i, t) in tuples.iter().enumerate() {
        let dm = Mat::diagonal(t.clone());
        let um: Mat<CycloNum> = match nilpotents.get(i) {
            Some(n) => nil_exp(&n.map(|c| CycloNum::from_rational(c.clone())))?,
            None => Mat::identity(d),
        };
        if !um.commutes_with(&dm) {
            return Ok(None);
        }
        m_list.push(p_inv_c.mul(&um.mul(&dm)).mul(&p_c));
        d_list.push(dm);
        u_list.push(um);
    }
    let mut cert = Certificate {
        kind: inst.mode.as_str().to_string(),
        conductor: q,
        p: p_c,
        p_inv: p_inv_c,
        lattice: lat,
        selector: None,
        d_list,
        u_list,
        v: vec![],
        m_list,
        templates: vec![],
        verify: None,
    };
    let report = verify_certificate(gens_cyc, &cert, opts.verify_n, &budget)?;
    if report.passed {
        cert.verify = Some(report);
        Ok(Some(cert))
    } else {
        if let Some(fail) = report.first_failure() {
            log.push(format!("candidate P=Id failed `{}`: {}", fail.name, fail.detail));
        }
        Ok(None)
    }
}

/// Basis of the log space of the unipotent slice when it is a linear space
/// of dimension at most `s`; `None` when the slice fails those conditions.
pub(crate) fn unipotent_slice_logs(
    conj_ideal: &Ideal<Rat>,
    d: usize,
    s: usize,
    budget: &Budget,
) -> Result<Option<Vec<Mat<Rat>>>, DetError> {
    let ring = conj_ideal.ring().clone();
    // unipotent slice: add the entries of (X - Id)^d
    let mut gens = conj_ideal.gens().to_vec();
    for e in nilpotency_entries(&ring, d) {
        gens.push(e);
    }
    // map to logs: fresh variables L with L = log(X), eliminate X
    let l_names: Vec<String> = (0..d * d).map(|k| format!("l__{k}")).collect();
    let mut vars = ring.vars().to_vec();
    vars.extend(l_names.clone());
    let big = Ring::new(vars);
    let mut big_gens: Vec<Poly<Rat>> = gens
        .iter()
        .map(|g| g.transfer(&big))
        .collect::<Result<_, _>>()?;
    let logm = log_series_polymat(&big, &ring, d);
    for (k, name) in l_names.iter().enumerate() {
        let l = Poly::var_named(&big, name);
        big_gens.push(l.sub(&logm[k / d][k % d]));
    }
    let x_idx: Vec<usize> = (0..d * d).collect();
    let l_ring = Ring::new(l_names.clone());
    let log_image = Ideal::new(big, big_gens).eliminate_into(&x_idx, &l_ring, budget)?;
    let Some(forms) = log_image.linear_variety_basis(budget)? else {
        return Ok(None);
    };
    // solution space of the linear forms
    let mut coeff = Mat::<Rat>::zeros(forms.len(), d * d);
    for (r, f) in forms.iter().enumerate() {
        if f.total_degree() > 1 || !Coeff::is_zero(&f.constant_coeff()) {
            return Ok(None);
        }
        for (m, c) in f.terms() {
            if let Some(pos) = m.0.iter().position(|&e| e == 1) {
                coeff[(r, pos)] = c.clone();
            }
        }
    }
    let kernel = coeff.kernel();
    if kernel.len() > s {
        return Ok(None);
    }
    let mats: Vec<Mat<Rat>> = kernel
        .iter()
        .map(|v| {
            let mut m = Mat::zeros(d, d);
            for (k, val) in v.iter().enumerate() {
                m[(k / d, k % d)] = val.clone();
            }
            m
        })
        .collect();
    Ok(Some(mats))
}

/// Entries of (X - Id)^d as polynomials over the matrix ring.
pub(crate) fn nilpotency_entries(ring: &RingRef, d: usize) -> Vec<Poly<Rat>> {
    let x: Vec<Vec<Poly<Rat>>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let v = Poly::var(ring, i * d + j);
                    if i == j {
                        v.sub(&Poly::one(ring))
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let mut pow = x.clone();
    for _ in 1..d {
        pow = super::closure::polymat_mul(&pow, &x);
    }
    pow.into_iter().flatten().collect()
}

/// The matrix log series applied to the matrix of ring variables (valid on
/// the unipotent slice where (X - Id)^d = 0).
fn log_series_polymat(big: &RingRef, x_ring: &RingRef, d: usize) -> Vec<Vec<Poly<Rat>>> {
    let a: Vec<Vec<Poly<Rat>>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let v = Poly::var_named(big, &x_ring.vars()[i * d + j]);
                    if i == j {
                        v.sub(&Poly::one(big))
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let mut acc: Vec<Vec<Poly<Rat>>> = vec![vec![Poly::zero(big); d]; d];
    let mut pow = a.clone();
    for k in 1..=d as i64 {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let c = Rat::new(BigInt::from(sign), BigInt::from(k));
        for i in 0..d {
            for j in 0..d {
                if !pow[i][j].is_zero() {
                    acc[i][j] = acc[i][j].add(&pow[i][j].scale(&c));
                }
            }
        }
        if k < d as i64 {
            pow = super::closure::polymat_mul(&pow, &a);
        }
    }
    acc
}

/// {F(P X P^-1)} for a concrete rational P.
fn conjugate_matrix_ideal(
    gens: &[Poly<Rat>],
    p: &Mat<Rat>,
    p_inv: &Mat<Rat>,
) -> Result<Vec<Poly<Rat>>, DetError> {
    let ring = gens[0].ring().clone();
    let d = p.nrows();
    // images: x_ij -> (P X P^-1)_ij
    let mut images = vec![Poly::zero(&ring); d * d];
    for i in 0..d {
        for j in 0..d {
            let mut e = Poly::zero(&ring);
            for k in 0..d {
                for l in 0..d {
                    let c = p[(i, k)].clone() * &p_inv[(l, j)];
                    if !Coeff::is_zero(&c) {
                        let x = Poly::var(&ring, k * d + l);
                        e = e.add(&x.scale(&c));
                    }
                }
            }
            images[i * d + j] = e;
        }
    }
    Ok(gens.iter().map(|g| g.substitute(&images)).collect())
}

/// x_ij -> (P X Q)_ij in the combined ring.
fn conjugation_images(
    cring: &RingRef,
    x_ring: &RingRef,
    p_names: &[String],
    q_names: &[String],
    d: usize,
) -> Vec<Poly<Rat>> {
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

/// Entries of PQ - Id over the parameter ring.
fn pq_identity_relations(
    param_ring: &RingRef,
    p_names: &[String],
    q_names: &[String],
    d: usize,
) -> Vec<Poly<Rat>> {
    let mut out = vec![];
    for i in 0..d {
        for j in 0..d {
            let mut e = Poly::zero(param_ring);
            for k in 0..d {
                let p = Poly::var_named(param_ring, &p_names[i * d + k]);
                let q = Poly::var_named(param_ring, &q_names[k * d + j]);
                e = e.add(&p.mul(&q));
            }
            if i == j {
                e = e.sub(&Poly::one(param_ring));
            }
            out.push(e);
        }
    }
    out
}

/// The ideal of diagonal matrices conjugate into the variety: eliminate P
/// and Q from <F(PXQ), PQ - Id, off-diagonal X entries>.
pub(crate) fn diagonal_conjugates_ideal(
    gens: &[Poly<Rat>],
    d: usize,
    budget: &Budget,
) -> Result<Ideal<Rat>, DetError> {
    let ring = gens[0].ring().clone();
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
    let images = conjugation_images(&big, &ring, &p_names, &q_names, d);
    let mut big_gens: Vec<Poly<Rat>> = gens
        .iter()
        .map(|g| g.substitute(&images))
        .collect();
    for e in pq_identity_relations(&big, &p_names, &q_names, d) {
        big_gens.push(e);
    }
    for i in 0..d {
        for j in 0..d {
            if i != j {
                big_gens.push(Poly::var_named(&big, &ring.vars()[i * d + j]));
            }
        }
    }
    let drop: Vec<usize> = (0..2 * d * d).collect();
    Ideal::new(big, big_gens)
        .eliminate_into(&drop, &ring, budget)
        .map_err(DetError::from)
}

fn diag_var_index(ring: &RingRef, i: usize, d: usize) -> usize {
    let _ = ring;
    i * d + i
}
