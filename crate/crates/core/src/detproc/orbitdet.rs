//! Orbit-closure determination: guess (selector, lattice, unipotent
//! template), solve for the change of variables with the containment
//! machinery, synthesize generators, and keep only candidates whose
//! certificate survives independent verification.

use super::certificate::Certificate;
use super::closure::{lattice_ideal, polymat_mul, PolyMat};
use super::containment::{equality_conditions, ContainmentProblem};
use super::instance::{DetInstance, DetectOptions, Mode};
use super::ratpoint::PointSearch;
use super::templates::UnipotentTemplate;
use super::verify::verify_certificate;
use super::{fresh_budget, parse_gens_cyclo, DetError, Verdict};
use crate::arith::{Coeff, CycloNum, Rat};
use crate::lattice::{
    enumerate_lattices_exhaustive, lattices_from_seeds, generators_of_h, Lattice,
};
use crate::matgroup::{Mat, SelectorMatrix};
use crate::poly::{parse_poly, Budget, Ideal, Poly, Ring, RingRef};
use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};

pub fn orbit_det_semisimple(inst: &DetInstance, opts: &DetectOptions) -> Result<Verdict, DetError> {
    let d = inst.dim();
    orbit_det(inst, opts, vec![vec![UnipotentTemplate::identity(d); inst.s]])
}

pub fn orbit_det_commutative(inst: &DetInstance, opts: &DetectOptions) -> Result<Verdict, DetError> {
    let d = inst.dim();
    let singles: Vec<UnipotentTemplate> = match &inst.templates {
        Some(user) => {
            let mut fam = vec![UnipotentTemplate::identity(d)];
            fam.extend(user.iter().cloned());
            fam
        }
        None => super::templates::default_template_family(d),
    };
    // template sets: s copies chosen from the family; nontrivial templates
    // beyond the first slot must commute, checked at assembly. For the
    // default search the later slots stay trivial.
    let mut sets: Vec<Vec<UnipotentTemplate>> = vec![];
    for tpl in &singles {
        let mut set = vec![tpl.clone()];
        for _ in 1..inst.s {
            set.push(UnipotentTemplate::identity(d));
        }
        sets.push(set);
    }
    orbit_det(inst, opts, sets)
}

fn orbit_det(
    inst: &DetInstance,
    opts: &DetectOptions,
    template_sets: Vec<Vec<UnipotentTemplate>>,
) -> Result<Verdict, DetError> {
    let d = inst.dim();
    if !matches!(inst.mode, Mode::OrbitSemisimple | Mode::OrbitCommutative) {
        return Err(DetError::Input("orbit procedure on a non-orbit instance".into()));
    }
    let point_ring = inst.ring();
    let gens_rat: Vec<Poly<Rat>> = inst
        .gens
        .iter()
        .map(|s| parse_poly(s, &point_ring))
        .collect::<Result<_, _>>()?;
    let gens_cyc = parse_gens_cyclo(&inst.gens, &point_ring)?;
    let pool = seed_pool(&gens_rat);
    let mut log: Vec<String> = vec![];
    let mut saw_resource = false;
    let mut saw_gap = false;

    for k in 0..=d {
        for cols in combinations(d, k) {
            let selector = SelectorMatrix::new(d, cols);
            let lattices = candidate_lattices(&pool, &selector, inst, opts);
            for lat in &lattices {
                for tset in &template_sets {
                    match try_candidate(
                        &point_ring,
                        &gens_rat,
                        &gens_cyc,
                        inst,
                        opts,
                        &selector,
                        lat,
                        tset,
                        &mut log,
                    ) {
                        Ok(Some(cert)) => return Ok(Verdict::yes(cert, log)),
                        Ok(None) => {}
                        Err(e) if e.is_resource_limit() => {
                            saw_resource = true;
                            log.push(format!(
                                "candidate k={k} T={:?} lattice={:?}: budget exceeded",
                                selector.selected(),
                                lat.basis_rows()
                            ));
                        }
                        Err(DetError::AnsatzDegreeExceeded) => {
                            saw_gap = true;
                        }
                        Err(DetError::Mat(_)) | Err(DetError::Lattice(_)) => {
                            saw_gap = true;
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    let reason = if saw_resource {
        "budget exhausted before any candidate certified".to_string()
    } else if saw_gap {
        "search space exhausted; template family and point search are incomplete".to_string()
    } else {
        "no candidate (selector, lattice, template) admitted a verified witness".to_string()
    };
    Ok(Verdict::unknown(reason, saw_resource, log))
}

/// One (T, Lambda, template set) candidate: build the target, solve for P
/// (and template parameters), assemble generators, verify.
#[allow(clippy::too_many_arguments)]
fn try_candidate(
    point_ring: &RingRef,
    gens_rat: &[Poly<Rat>],
    gens_cyc: &[Poly<CycloNum>],
    inst: &DetInstance,
    opts: &DetectOptions,
    selector: &SelectorMatrix,
    lat: &Lattice,
    tset: &[UnipotentTemplate],
    log: &mut Vec<String>,
) -> Result<Option<Certificate>, DetError> {
    let budget = fresh_budget(opts);
    let d = point_ring.arity();
    let (cond, _cond_no_params, param_names, _lambda_names) = orbit_condition_ideal(
        gens_rat,
        selector,
        lat,
        tset,
        opts.ansatz_extra,
        &budget,
        false,
    )?;
    if cond.is_trivial(&budget)? {
        return Err(DetError::AnsatzDegreeExceeded);
    }
    // point search over Q(zeta_q), q from the lattice torsion
    let q = torsion_conductor(lat);
    let cond_cyc: Ideal<CycloNum> = Ideal::new(
        cond.ring().clone(),
        cond.gens()
            .iter()
            .map(|g| g.map_coeffs(|c| CycloNum::from_rational(c.clone())))
            .collect(),
    );
    let det_p = symbolic_det_in(cond.ring(), &param_names, d);
    let det_cyc = det_p.map_coeffs(|c: &Rat| CycloNum::from_rational(c.clone()));
    let mut search = PointSearch::defaults(q, opts.point_search_bound);
    search.nonzero = Some(&det_cyc);
    let points = super::ratpoint::rational_points(&cond_cyc, &search, 6, &budget)?;
    if points.is_empty() {
        return Ok(None);
    }
    for point in &points {
        if let Some(cert) =
            assemble_and_verify(inst, opts, gens_cyc, selector, lat, tset, &cond, point, q, log)?
        {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Builds the certificate for one solved point and verifies it.
#[allow(clippy::too_many_arguments)]
fn assemble_and_verify(
    inst: &DetInstance,
    opts: &DetectOptions,
    gens_cyc: &[Poly<CycloNum>],
    selector: &SelectorMatrix,
    lat: &Lattice,
    tset: &[UnipotentTemplate],
    cond: &Ideal<Rat>,
    point: &[CycloNum],
    q: u32,
    log: &mut Vec<String>,
) -> Result<Option<Certificate>, DetError> {
    let budget = fresh_budget(opts);
    let d = selector.dim();
    let param_names: Vec<String> = (0..d)
        .flat_map(|i| (0..d).map(move |j| format!("p{}{}", i + 1, j + 1)))
        .collect();
    let lambda_names: Vec<String> = {
        let mut out = vec![];
        for (ti, tpl) in tset.iter().enumerate() {
            for pname in &tpl.params {
                out.push(format!("{pname}__{ti}"));
            }
        }
        out
    };
    // split the point into the P matrix and template parameter values
    let ring = cond.ring();
    let mut p_sol = Mat::<CycloNum>::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let idx = ring.var_index(&param_names[i * d + j]).unwrap();
            p_sol[(i, j)] = point[idx].clone();
        }
    }
    let Some(p_sol_inv) = p_sol.inverse() else {
        return Ok(None);
    };
    let mut lambda_vals: Vec<CycloNum> = vec![];
    for name in &lambda_names {
        let idx = ring.var_index(name).unwrap();
        lambda_vals.push(point[idx].clone());
    }
    // instantiate templates with their own parameter slices
    let mut u_list: Vec<Mat<CycloNum>> = vec![];
    let mut bindings: Vec<(UnipotentTemplate, Vec<CycloNum>)> = vec![];
    let mut offset = 0usize;
    for tpl in tset {
        let take = tpl.param_count();
        let vals = lambda_vals[offset..offset + take].to_vec();
        offset += take;
        u_list.push(tpl.instantiate(&vals));
        bindings.push((tpl.clone(), vals));
    }
    for i in 0..u_list.len() {
        for j in i + 1..u_list.len() {
            if !u_list[i].commutes_with(&u_list[j]) {
                return Ok(None);
            }
        }
    }
    // diagonal parts: selected coordinates carry the lattice generators,
    // the rest follow the template-support equivalence classes
    let gen_tuples = generators_of_h(lat, inst.s)?;
    let classes = support_classes(d, tset, selector);
    let mut d_list: Vec<Mat<CycloNum>> = vec![];
    for tuple in &gen_tuples {
        let mut diag: Vec<Option<CycloNum>> = vec![None; d];
        for (j, &coord) in selector.selected().iter().enumerate() {
            diag[coord] = Some(tuple[j].clone());
        }
        for class in &classes {
            let vals: Vec<CycloNum> = class
                .iter()
                .filter_map(|&c| diag[c].clone())
                .collect();
            if vals.windows(2).any(|w| w[0] != w[1]) {
                return Ok(None); // template forces equal entries that differ
            }
            let fill = vals.first().cloned().unwrap_or_else(CycloNum::one);
            for &c in class {
                diag[c] = Some(diag[c].clone().unwrap_or_else(|| fill.clone()));
            }
        }
        let diag: Vec<CycloNum> = diag
            .into_iter()
            .map(|v| v.unwrap_or_else(CycloNum::one))
            .collect();
        d_list.push(Mat::diagonal(diag));
    }
    // commutation of every D with every U, exactly
    for dm in &d_list {
        for um in &u_list {
            if !dm.commutes_with(um) {
                return Ok(None);
            }
        }
    }
    let mut m_list: Vec<Mat<CycloNum>> = vec![];
    for (um, dm) in u_list.iter().zip(&d_list) {
        m_list.push(p_sol.mul(&um.mul(dm)).mul(&p_sol_inv));
    }
    let t1: Vec<CycloNum> = selector.times_ones();
    let v = p_sol.mul_vec(&t1);
    let mut cert = Certificate {
        kind: inst.mode.as_str().to_string(),
        conductor: q,
        p: p_sol_inv.clone(),
        p_inv: p_sol.clone(),
        lattice: lat.clone(),
        selector: Some(selector.clone()),
        d_list,
        u_list,
        v,
        m_list,
        templates: bindings,
        verify: None,
    };
    let report = verify_certificate(gens_cyc, &cert, opts.verify_n, &budget)?;
    if report.passed {
        cert.verify = Some(report);
        Ok(Some(cert))
    } else {
        if let Some(fail) = report.first_failure() {
            log.push(format!(
                "candidate T={:?} lattice={:?}: verification failed at `{}`: {}",
                selector.selected(),
                lat.basis_rows(),
                fail.name,
                fail.detail
            ));
        }
        Ok(None)
    }
}

/// The condition ideal of a candidate: parameters are the d^2 entries of P
/// plus the template parameters. Returns (conditions, lambda-eliminated
/// conditions when requested, P entry names, template parameter names).
pub fn orbit_condition_ideal(
    gens_rat: &[Poly<Rat>],
    selector: &SelectorMatrix,
    lat: &Lattice,
    tset: &[UnipotentTemplate],
    ansatz_extra: u32,
    budget: &Budget,
    eliminate_lambda: bool,
) -> Result<(Ideal<Rat>, Option<Ideal<Rat>>, Vec<String>, Vec<String>), DetError> {
    let point_ring = gens_rat[0].ring().clone();
    let d = point_ring.arity();
    let k = selector.k();
    // parameter names
    let p_names: Vec<String> = (0..d)
        .flat_map(|i| (0..d).map(move |j| format!("p{}{}", i + 1, j + 1)))
        .collect();
    let mut lambda_names: Vec<String> = vec![];
    for (ti, tpl) in tset.iter().enumerate() {
        for pname in &tpl.params {
            lambda_names.push(format!("{pname}__{ti}"));
        }
    }
    // target generators H(lambda; x)
    let mut ring_vars = p_names.clone();
    ring_vars.extend(lambda_names.clone());
    ring_vars.extend(point_ring.vars().iter().cloned());
    let cring = Ring::new(ring_vars);
    let target_gens: Vec<Poly<Rat>> = if k == 0 {
        (0..d)
            .map(|i| Poly::var_named(&cring, &point_ring.vars()[i]))
            .collect()
    } else if tset.iter().all(|t| t.param_count() == 0) && tset.iter().all(|t| t.support().is_empty())
    {
        // purely semisimple: the pulled-back lattice ideal plus vanishing
        // off-selector coordinates
        let sel_ring = Ring::new(
            selector
                .selected()
                .iter()
                .map(|&c| point_ring.vars()[c].clone())
                .collect::<Vec<_>>(),
        );
        let li = lattice_ideal::<Rat>(lat, &sel_ring, budget)?;
        let mut gens: Vec<Poly<Rat>> = li
            .gens()
            .iter()
            .map(|g| g.transfer(&cring))
            .collect::<Result<_, _>>()?;
        for i in 0..d {
            if !selector.selected().contains(&i) {
                gens.push(Poly::var_named(&cring, &point_ring.vars()[i]));
            }
        }
        gens
    } else {
        parametrized_orbit_ideal(&point_ring, selector, lat, tset, &lambda_names, budget)?
            .gens()
            .iter()
            .map(|g| g.transfer(&cring))
            .collect::<Result<_, _>>()?
    };
    // sources: F_i(P x)
    let images: Vec<Poly<Rat>> = (0..d)
        .map(|i| {
            let mut img = Poly::zero(&cring);
            for j in 0..d {
                let pij = Poly::var_named(&cring, &p_names[i * d + j]);
                let xj = Poly::var_named(&cring, &point_ring.vars()[j]);
                img = img.add(&pij.mul(&xj));
            }
            img
        })
        .collect();
    let sources: Vec<Poly<Rat>> = gens_rat
        .iter()
        .map(|g| g.substitute(&images))
        .collect();
    let point_idx: Vec<usize> = point_ring
        .vars()
        .iter()
        .map(|v| cring.var_index(v).unwrap())
        .collect();
    let prob = ContainmentProblem {
        ring: cring.clone(),
        point_vars: point_idx,
        sources,
        targets: target_gens,
    };
    // principal source and target: proportionality (forward containment)
    // reproduces the published condition ideals exactly; the degenerate
    // locus it tolerates is rejected by verification. Otherwise run both
    // directions.
    let proportional = prob.sources.len() == 1 && prob.targets.len() == 1;
    let run = |extra: u32, budget: &Budget| {
        if proportional {
            super::containment::containment_conditions(&prob, extra, budget)
        } else {
            equality_conditions(&prob, extra, budget)
        }
    };
    let mut cond = run(0, budget)?;
    if cond.is_trivial(budget)? && ansatz_extra > 0 {
        cond = run(ansatz_extra, budget)?;
    }
    let no_lambda = if eliminate_lambda && !lambda_names.is_empty() {
        let idx: Vec<usize> = lambda_names
            .iter()
            .map(|n| cond.ring().var_index(n).unwrap())
            .collect();
        Some(cond.eliminate(&idx, budget)?)
    } else {
        None
    };
    Ok((cond, no_lambda, p_names, lambda_names))
}

/// The ideal of {exp(sum t_i log U_i(lambda)) T g : g in H_Lambda, t free},
/// as polynomials in (lambda, x), computed by eliminating t and g.
fn parametrized_orbit_ideal(
    point_ring: &RingRef,
    selector: &SelectorMatrix,
    lat: &Lattice,
    tset: &[UnipotentTemplate],
    lambda_names: &[String],
    budget: &Budget,
) -> Result<Ideal<Rat>, DetError> {
    let d = point_ring.arity();
    let k = selector.k();
    let s = tset.len();
    let mut vars: Vec<String> = (0..s).map(|i| format!("t__{i}")).collect();
    vars.extend((0..k).map(|j| format!("g__{j}")));
    vars.extend(lambda_names.iter().cloned());
    vars.extend(point_ring.vars().iter().cloned());
    let ring = Ring::new(vars);
    // symbolic U_i over the big ring, with per-template parameter renames
    let mut offset = 0usize;
    let mut e_total: Option<PolyMat<Rat>> = None;
    for (i, tpl) in tset.iter().enumerate() {
        // substitute renamed parameters into the pattern
        let mut renamed = tpl.clone();
        for pname in &mut renamed.params {
            *pname = format!("{pname}__{i}");
        }
        for row in &mut renamed.pattern {
            for e in row {
                if let super::templates::PatternEntry::Param(n) = e {
                    *n = format!("{n}__{i}");
                }
            }
        }
        offset += tpl.param_count();
        let u_sym = renamed.symbolic::<Rat>(&ring);
        let n_sym = polymat_log_unipotent(&u_sym);
        let e_i = polymat_exp_scaled(&n_sym, &ring, i);
        e_total = Some(match e_total {
            None => e_i,
            Some(prev) => polymat_mul(&prev, &e_i),
        });
    }
    let _ = offset;
    let e = e_total.expect("at least one template");
    // w = E * T * g
    let mut gens: Vec<Poly<Rat>> = vec![];
    for i in 0..d {
        let x = Poly::var_named(&ring, &point_ring.vars()[i]);
        let mut w = Poly::zero(&ring);
        for (j, &coord) in selector.selected().iter().enumerate() {
            let g = Poly::var(&ring, s + j);
            w = w.add(&e[i][coord].mul(&g));
        }
        gens.push(x.sub(&w));
    }
    let g_ring = Ring::new((0..k).map(|j| format!("g__{j}")).collect::<Vec<_>>());
    let rel = lattice_ideal::<Rat>(lat, &g_ring, budget)?;
    for r in rel.gens() {
        gens.push(r.transfer(&ring)?);
    }
    let big = Ideal::new(ring.clone(), gens);
    let drop: Vec<usize> = (0..s + k).collect();
    let kept_vars: Vec<String> = lambda_names
        .iter()
        .cloned()
        .chain(point_ring.vars().iter().cloned())
        .collect();
    let target_ring = Ring::new(kept_vars);
    Ok(big.eliminate_into(&drop, &target_ring, budget)?)
}

/// log of an upper-unitriangular polynomial matrix (finite series).
fn polymat_log_unipotent(u: &PolyMat<Rat>) -> PolyMat<Rat> {
    let d = u.len();
    let ring = u[0][0].ring().clone();
    let mut a: PolyMat<Rat> = u.clone();
    for (i, row) in a.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            if i == j {
                *e = e.sub(&Poly::one(&ring));
            }
        }
    }
    let mut acc: PolyMat<Rat> = vec![vec![Poly::zero(&ring); d]; d];
    let mut pow = a.clone();
    for k in 1..d as i64 {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let c = crate::arith::Rat::new(BigInt::from(sign), BigInt::from(k));
        for i in 0..d {
            for j in 0..d {
                if !pow[i][j].is_zero() {
                    let t = pow[i][j].scale(&c);
                    acc[i][j] = acc[i][j].add(&t);
                }
            }
        }
        if k < d as i64 - 1 {
            pow = polymat_mul(&pow, &a);
        }
    }
    acc
}

/// exp(t * N) for a nilpotent polynomial matrix and ring variable t.
fn polymat_exp_scaled(n: &PolyMat<Rat>, ring: &RingRef, t_index: usize) -> PolyMat<Rat> {
    let d = n.len();
    let mut out: PolyMat<Rat> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        Poly::one(ring)
                    } else {
                        Poly::zero(ring)
                    }
                })
                .collect()
        })
        .collect();
    let t = Poly::<Rat>::var(ring, t_index);
    let mut pow = n.clone();
    let mut fact = BigInt::from(1);
    let mut tk = Poly::one(ring);
    for k in 1..d as i64 {
        fact *= k;
        tk = tk.mul(&t);
        let c = crate::arith::Rat::new(BigInt::from(1), fact.clone());
        let mut all_zero = true;
        for i in 0..d {
            for j in 0..d {
                if !pow[i][j].is_zero() {
                    all_zero = false;
                    let term = pow[i][j].scale(&c).mul(&tk);
                    out[i][j] = out[i][j].add(&term);
                }
            }
        }
        if all_zero {
            break;
        }
        if k < d as i64 - 1 {
            pow = polymat_mul(&pow, n);
        }
    }
    out
}

/// Equivalence classes of coordinates joined by some template's nonzero
/// off-diagonal entries; selected coordinates anchor the class values.
fn support_classes(d: usize, tset: &[UnipotentTemplate], _sel: &SelectorMatrix) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for tpl in tset {
        for (i, j) in tpl.support() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..d {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    classes.into_values().collect()
}

/// Conductor needed for the torsion part: lcm of the nontrivial divisors.
pub(crate) fn torsion_conductor(lat: &Lattice) -> u32 {
    lat.elementary_divisors()
        .iter()
        .filter(|d| !d.is_one())
        .fold(1u32, |a, d| a.lcm(&d.to_u32().unwrap_or(1)))
}

fn symbolic_det_in(ring: &RingRef, p_names: &[String], d: usize) -> Poly<Rat> {
    super::groupchk::det_poly::<Rat>(ring, d, &|i, j| {
        ring.var_index(&p_names[i * d + j]).unwrap()
    })
}

/// Exponent-difference seed vectors (with one closure round of sums,
/// differences, and content divisions), deterministic and capped.
fn seed_pool(gens: &[Poly<Rat>]) -> Vec<Vec<BigInt>> {
    let mut base: Vec<Vec<BigInt>> = vec![];
    for g in gens {
        let exps: Vec<Vec<BigInt>> = g
            .terms()
            .map(|(m, _)| m.0.iter().map(|&e| BigInt::from(e)).collect())
            .collect();
        for i in 0..exps.len() {
            for j in i + 1..exps.len() {
                let v: Vec<BigInt> = exps[i]
                    .iter()
                    .zip(&exps[j])
                    .map(|(a, b)| a - b)
                    .collect();
                if v.iter().any(|e| !e.is_zero()) {
                    base.push(v);
                }
            }
        }
    }
    let mut pool = base.clone();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            let sum: Vec<BigInt> = base[i].iter().zip(&base[j]).map(|(a, b)| a + b).collect();
            let diff: Vec<BigInt> = base[i].iter().zip(&base[j]).map(|(a, b)| a - b).collect();
            pool.push(sum);
            pool.push(diff);
        }
    }
    // content-divided copies
    let mut divided: Vec<Vec<BigInt>> = vec![];
    for v in &pool {
        let g = v
            .iter()
            .fold(BigInt::zero(), |acc, e| acc.gcd(e));
        if g > BigInt::one() {
            divided.push(v.iter().map(|e| e / &g).collect());
        }
    }
    pool.extend(divided);
    // canonical sign, dedup, deterministic order, cap
    let mut canon: Vec<Vec<BigInt>> = vec![];
    let mut seen = std::collections::BTreeSet::new();
    for v in pool {
        if v.iter().all(|e| e.is_zero()) {
            continue;
        }
        let mut w = v;
        if w.iter().find(|e| !e.is_zero()).map(|e| e.is_negative()) == Some(true) {
            w = w.iter().map(|e| -e).collect();
        }
        if seen.insert(w.clone()) {
            canon.push(w);
        }
    }
    canon.sort_by_key(|v| {
        (
            v.iter().map(|e| e.magnitude().to_u64().unwrap_or(u64::MAX)).sum::<u64>(),
            v.clone(),
        )
    });
    canon.truncate(48);
    canon
}

/// Candidate lattices on the selected coordinates, heuristic seeds first.
fn candidate_lattices(
    pool: &[Vec<BigInt>],
    selector: &SelectorMatrix,
    inst: &DetInstance,
    opts: &DetectOptions,
) -> Vec<Lattice> {
    let k = selector.k();
    if k == 0 {
        return vec![Lattice::zero(0)];
    }
    let projected: Vec<Vec<BigInt>> = pool
        .iter()
        .map(|v| {
            selector
                .selected()
                .iter()
                .map(|&c| v[c].clone())
                .collect::<Vec<_>>()
        })
        .filter(|v: &Vec<BigInt>| v.iter().any(|e| !e.is_zero()))
        .collect();
    let mut out = vec![Lattice::zero(k)];
    out.extend(lattices_from_seeds(k, &projected, k.min(3), inst.s));
    if opts.exhaustive_lattices && (k as i64) * inst.b <= 6 {
        for lat in enumerate_lattices_exhaustive(k, inst.b, inst.s) {
            if !out.contains(&lat) {
                out.push(lat);
            }
        }
    }
    out
}

/// Size-k index combinations of 0..n, ascending.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    if k > n {
        return out;
    }
    if k == 0 {
        return vec![vec![]];
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        let mut moved = false;
        while i > 0 {
            i -= 1;
            if idx[i] + (k - i) <= n - 1 {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                moved = true;
                break;
            }
        }
        if !moved {
            return out;
        }
    }
}
