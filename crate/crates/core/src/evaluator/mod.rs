//! Numerical evaluation of pooled features, the product basis (through the
//! graph and naively) and the linear model built on it.
//!
//! One-particle functions per group:
//!
//! * `T`:   `exp(i m theta)`
//! * `SO2`: `R_n(r) exp(-i m theta)`
//! * `O3`:  `R_n(r) Y_l^m(theta, phi)`
//! * `O3F`: `R_n(r) Y_l^m(theta, phi) T_f(mu)`
//!
//! with `R_n(r) = T_n(2r - 1)` and `T_f` Chebyshev polynomials. The opposite
//! exponent signs of `T` and `SO2` are intentional; both give the same
//! invariance constraints.

pub mod basis;
mod io;

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex;
use rand::Rng;

pub use io::{parse_coefficients, parse_config, write_config};

use crate::error::{Error, Result};
use crate::graph::EvalGraph;
use crate::indexsets::{one_particle_indices, BasisTuple, Group, OneParticleIndex};
use crate::scalar::Scalar;
use basis::{chebyshev_table, ylm_slot, ylm_table};

/// Coordinates of one particle, matching the group.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Particle<T> {
    Angle { theta: T },
    Polar { r: T, theta: T },
    Spherical { r: T, theta: T, phi: T },
    Featured { r: T, theta: T, phi: T, mu: T },
}

impl<T: Scalar> Particle<T> {
    pub fn group(&self) -> Group {
        match self {
            Particle::Angle { .. } => Group::T,
            Particle::Polar { .. } => Group::SO2,
            Particle::Spherical { .. } => Group::O3,
            Particle::Featured { .. } => Group::O3F,
        }
    }

    pub fn coordinates(&self) -> Vec<T> {
        match *self {
            Particle::Angle { theta } => vec![theta],
            Particle::Polar { r, theta } => vec![r, theta],
            Particle::Spherical { r, theta, phi } => vec![r, theta, phi],
            Particle::Featured { r, theta, phi, mu } => vec![r, theta, phi, mu],
        }
    }

    pub fn from_coordinates(group: Group, c: &[T]) -> Result<Self> {
        if c.len() != group.arity() {
            return Err(Error::InvalidArgument(format!(
                "{group} particles have {} coordinates, got {}",
                group.arity(),
                c.len()
            )));
        }
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("non-finite coordinate".into()));
        }
        Ok(match group {
            Group::T => Particle::Angle { theta: c[0] },
            Group::SO2 => Particle::Polar { r: c[0], theta: c[1] },
            Group::O3 => Particle::Spherical { r: c[0], theta: c[1], phi: c[2] },
            Group::O3F => Particle::Featured { r: c[0], theta: c[1], phi: c[2], mu: c[3] },
        })
    }

    fn radius(&self) -> Option<T> {
        match *self {
            Particle::Angle { .. } => None,
            Particle::Polar { r, .. } | Particle::Spherical { r, .. } | Particle::Featured { r, .. } => {
                Some(r)
            }
        }
    }

    fn check_domain(&self) -> Result<()> {
        if let Some(r) = self.radius() {
            if !(r >= T::zero() && r <= T::one()) {
                return Err(Error::Domain(format!("r = {r} outside [0, 1]")));
            }
        }
        if let Particle::Featured { mu, .. } = *self {
            if !(mu >= -T::one() && mu <= T::one()) {
                return Err(Error::Domain(format!("mu = {mu} outside [-1, 1]")));
            }
        }
        Ok(())
    }

    /// Global rotation: `theta + alpha` in the plane, `phi + alpha` about z.
    pub fn rotated(&self, alpha: T) -> Self {
        match *self {
            Particle::Angle { theta } => Particle::Angle { theta: theta + alpha },
            Particle::Polar { r, theta } => Particle::Polar { r, theta: theta + alpha },
            Particle::Spherical { r, theta, phi } => Particle::Spherical { r, theta, phi: phi + alpha },
            Particle::Featured { r, theta, phi, mu } => {
                Particle::Featured { r, theta, phi: phi + alpha, mu }
            }
        }
    }

    /// Point inversion `x -> -x`.
    pub fn inverted(&self) -> Self {
        let pi = T::PI();
        match *self {
            Particle::Angle { theta } => Particle::Angle { theta: theta + pi },
            Particle::Polar { r, theta } => Particle::Polar { r, theta: theta + pi },
            Particle::Spherical { r, theta, phi } => {
                Particle::Spherical { r, theta: pi - theta, phi: phi + pi }
            }
            Particle::Featured { r, theta, phi, mu } => {
                Particle::Featured { r, theta: pi - theta, phi: phi + pi, mu }
            }
        }
    }
}

/// A multiset of particles of one group.
#[derive(Clone, Debug, PartialEq)]
pub struct ParticleConfig<T> {
    group: Group,
    particles: Vec<Particle<T>>,
}

impl<T: Scalar> ParticleConfig<T> {
    pub fn new(group: Group, particles: Vec<Particle<T>>) -> Result<Self> {
        if let Some(p) = particles.iter().find(|p| p.group() != group) {
            return Err(Error::InvalidArgument(format!(
                "{} particle in a {group} configuration",
                p.group()
            )));
        }
        Ok(ParticleConfig { group, particles })
    }

    pub fn empty(group: Group) -> Self {
        ParticleConfig { group, particles: Vec::new() }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn particles(&self) -> &[Particle<T>] {
        &self.particles
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }

    pub fn rotated(&self, alpha: T) -> Self {
        self.map(|p| p.rotated(alpha))
    }

    pub fn inverted(&self) -> Self {
        self.map(|p| p.inverted())
    }

    fn map(&self, f: impl Fn(&Particle<T>) -> Particle<T>) -> Self {
        ParticleConfig { group: self.group, particles: self.particles.iter().map(f).collect() }
    }
}

/// `J` random particles: angles uniform, `r` uniform in `[0, 1]`, directions
/// uniform on the sphere, `mu` uniform in `[-1, 1]`.
pub fn random_config<T: Scalar, R: Rng + ?Sized>(
    group: Group,
    count: usize,
    rng: &mut R,
) -> ParticleConfig<T> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let particles = (0..count)
        .map(|_| {
            let theta = rng.gen::<f64>() * two_pi;
            let r = rng.gen::<f64>();
            let polar = (1.0 - 2.0 * rng.gen::<f64>()).acos();
            let mu = 2.0 * rng.gen::<f64>() - 1.0;
            let (r, theta, polar, mu) = (T::lit(r), T::lit(theta), T::lit(polar), T::lit(mu));
            match group {
                Group::T => Particle::Angle { theta },
                Group::SO2 => Particle::Polar { r, theta },
                Group::O3 => Particle::Spherical { r, theta: polar, phi: theta },
                Group::O3F => Particle::Featured { r, theta: polar, phi: theta, mu },
            }
        })
        .collect();
    ParticleConfig { group, particles }
}

/// Value of the one-particle function `phi_k` at a particle.
pub fn one_particle<T: Scalar>(index: &OneParticleIndex, particle: &Particle<T>) -> Result<Complex<T>> {
    if index.group() != particle.group() {
        return Err(Error::InvalidArgument(format!(
            "{} index applied to a {} particle",
            index.group(),
            particle.group()
        )));
    }
    particle.check_domain()?;
    let m = T::from_i32(index.m()).unwrap();
    let two = T::lit(2.0);
    Ok(match (*index, *particle) {
        (OneParticleIndex::T { .. }, Particle::Angle { theta }) => Complex::from_polar(T::one(), m * theta),
        (OneParticleIndex::SO2 { n, .. }, Particle::Polar { r, theta }) => {
            let rad = chebyshev_table(n as usize, two * r - T::one())[n as usize];
            Complex::from_polar(rad, -m * theta)
        }
        (OneParticleIndex::O3 { n, l, .. }, Particle::Spherical { r, theta, phi }) => {
            let rad = chebyshev_table(n as usize, two * r - T::one())[n as usize];
            basis::ylm(l as usize, index.m() as i64, theta, phi) * rad
        }
        (OneParticleIndex::O3F { n, l, f, .. }, Particle::Featured { r, theta, phi, mu }) => {
            let rad = chebyshev_table(n as usize, two * r - T::one())[n as usize];
            let feat = chebyshev_table(f as usize, mu)[f as usize];
            basis::ylm(l as usize, index.m() as i64, theta, phi) * (rad * feat)
        }
        _ => unreachable!("group checked above"),
    })
}

/// Pooled features `A_k = sum_j phi_k(r_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PooledBasis<T> {
    values: HashMap<OneParticleIndex, Complex<T>>,
}

impl<T: Scalar> PooledBasis<T> {
    pub fn get(&self, index: &OneParticleIndex) -> Option<Complex<T>> {
        self.values.get(index).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OneParticleIndex, &Complex<T>)> {
        self.values.iter()
    }

    /// `A_k` for exactly the given indices, one particle at a time through
    /// [`one_particle`].
    pub fn direct(indices: &[OneParticleIndex], config: &ParticleConfig<T>) -> Result<Self> {
        let mut values = HashMap::with_capacity(indices.len());
        for idx in indices {
            let mut acc = Complex::new(T::zero(), T::zero());
            for p in config.particles() {
                acc = acc + one_particle(idx, p)?;
            }
            values.insert(*idx, acc);
        }
        Ok(PooledBasis { values })
    }
}

/// Per-particle tables shared by all indices of degree `<= D`.
struct ParticleTables<T> {
    radial: Vec<T>,
    feature: Vec<T>,
    phase: Vec<Complex<T>>,
    ylm: Vec<Complex<T>>,
}

impl<T: Scalar> ParticleTables<T> {
    fn new(p: &Particle<T>, d: usize) -> Self {
        let two = T::lit(2.0);
        let mut t = ParticleTables { radial: Vec::new(), feature: Vec::new(), phase: Vec::new(), ylm: Vec::new() };
        let phases = |theta: T, sign: T| -> Vec<Complex<T>> {
            (-(d as i64)..=d as i64)
                .map(|m| Complex::from_polar(T::one(), sign * T::from_i64(m).unwrap() * theta))
                .collect()
        };
        match *p {
            Particle::Angle { theta } => t.phase = phases(theta, T::one()),
            Particle::Polar { r, theta } => {
                t.radial = chebyshev_table(d, two * r - T::one());
                t.phase = phases(theta, -T::one());
            }
            Particle::Spherical { r, theta, phi } => {
                t.radial = chebyshev_table(d, two * r - T::one());
                t.ylm = ylm_table(d, theta, phi);
            }
            Particle::Featured { r, theta, phi, mu } => {
                t.radial = chebyshev_table(d, two * r - T::one());
                t.ylm = ylm_table(d, theta, phi);
                t.feature = chebyshev_table(d, mu);
            }
        }
        t
    }

    fn value(&self, idx: &OneParticleIndex, d: usize) -> Complex<T> {
        match *idx {
            OneParticleIndex::T { m } => self.phase[(m as i64 + d as i64) as usize],
            OneParticleIndex::SO2 { n, m } => self.phase[(m as i64 + d as i64) as usize] * self.radial[n as usize],
            OneParticleIndex::O3 { n, l, m } => self.ylm[ylm_slot(l as usize, m as i64)] * self.radial[n as usize],
            OneParticleIndex::O3F { n, l, m, f } => {
                self.ylm[ylm_slot(l as usize, m as i64)] * (self.radial[n as usize] * self.feature[f as usize])
            }
        }
    }
}

/// `A_k` for every one-particle index of element degree `<= D`.
pub fn pool<T: Scalar>(group: Group, max_degree: u32, config: &ParticleConfig<T>) -> Result<PooledBasis<T>> {
    if config.group() != group {
        return Err(Error::InvalidArgument(format!(
            "{} configuration pooled as {group}",
            config.group()
        )));
    }
    let indices = one_particle_indices(group, max_degree);
    let d = max_degree as usize;
    let mut acc = vec![Complex::new(T::zero(), T::zero()); indices.len()];
    for p in config.particles() {
        p.check_domain()?;
        let tables = ParticleTables::new(p, d);
        for (a, idx) in acc.iter_mut().zip(&indices) {
            *a = *a + tables.value(idx, d);
        }
    }
    Ok(PooledBasis { values: indices.into_iter().zip(acc).collect() })
}

/// Values of every node, indexed by node id: seeds take pooled values and
/// every other node is the product of its two parents.
pub fn eval_graph<T: Scalar>(graph: &EvalGraph, pooled: &PooledBasis<T>) -> Result<Vec<Complex<T>>> {
    let mut values = Vec::with_capacity(graph.len());
    for node in graph.nodes() {
        let v = match node.parents {
            Some((a, b)) => values[a] * values[b],
            None => {
                let e = &node.tuple.elements()[0];
                pooled.get(e).ok_or_else(|| Error::MissingSeed(e.to_string()))?
            }
        };
        values.push(v);
    }
    Ok(values)
}

/// Direct product `prod_t A_{k_t}`; the reference for [`eval_graph`].
pub fn naive_eval<T: Scalar>(tuple: &BasisTuple, pooled: &PooledBasis<T>) -> Result<Complex<T>> {
    tuple.elements().iter().try_fold(Complex::new(T::one(), T::zero()), |acc, e| {
        pooled.get(e).map(|a| acc * a).ok_or_else(|| Error::MissingSeed(e.to_string()))
    })
}

/// Multiplications performed by [`eval_graph`].
pub fn graph_multiplications(graph: &EvalGraph) -> usize {
    graph.product_nodes().count()
}

/// Multiplications needed to evaluate every target node of order `>= 2`
/// as an independent product.
pub fn naive_multiplications(graph: &EvalGraph) -> usize {
    graph
        .nodes()
        .iter()
        .filter(|n| !n.auxiliary && n.tuple.order() >= 2)
        .map(|n| n.tuple.order() - 1)
        .sum()
}

/// Model coefficients `c_k` on target tuples; auxiliary nodes are zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CoefficientVector<T> {
    entries: BTreeMap<BasisTuple, Complex<T>>,
}

impl<T: Scalar> CoefficientVector<T> {
    pub fn new() -> Self {
        CoefficientVector { entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, tuple: BasisTuple, c: Complex<T>) {
        self.entries.insert(tuple, c);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisTuple, &Complex<T>)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Resolves every key to a target node id.
    fn resolve(&self, graph: &EvalGraph) -> Result<Vec<(usize, Complex<T>)>> {
        self.entries
            .iter()
            .map(|(t, c)| {
                let id = graph.id_of(t).ok_or_else(|| Error::UnknownTuple(t.to_string()))?;
                if graph.node(id).auxiliary || !graph.is_target(t) {
                    return Err(Error::NotTarget(t.to_string()));
                }
                Ok((id, *c))
            })
            .collect()
    }
}

/// `sum_k c_k A_k` from already pooled features.
pub fn eval_model_pooled<T: Scalar>(
    graph: &EvalGraph,
    coeffs: &CoefficientVector<T>,
    pooled: &PooledBasis<T>,
) -> Result<Complex<T>> {
    let terms = coeffs.resolve(graph)?;
    let values = eval_graph(graph, pooled)?;
    Ok(terms
        .into_iter()
        .fold(Complex::new(T::zero(), T::zero()), |acc, (id, c)| acc + c * values[id]))
}

/// `phi(config) = sum_k c_k A_k` evaluated through the graph.
pub fn eval_model<T: Scalar>(
    graph: &EvalGraph,
    coeffs: &CoefficientVector<T>,
    config: &ParticleConfig<T>,
) -> Result<Complex<T>> {
    let meta = graph.meta();
    let pooled = pool(meta.group, meta.degree.max_degree, config)?;
    eval_model_pooled(graph, coeffs, &pooled)
}

/// Real part of a model value: the reflection-symmetrised output.
pub fn reflect_real<T: Scalar>(value: Complex<T>) -> T {
    value.re
}

/// `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_deviation<T: Scalar>(a: Complex<T>, b: Complex<T>) -> T {
    let scale = a.norm().max(b.norm());
    if scale == T::zero() {
        T::zero()
    } else {
        (a - b).norm() / scale
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvarianceReport<T> {
    /// Largest relative change of any target node under random rotations.
    pub rotation: T,
    /// Largest relative change under point inversion (3D groups only).
    pub inversion: Option<T>,
    /// Relative change of a non-invariant tuple under a quarter turn.
    pub control: T,
}

/// Tuple with `sum m = 2` used as a negative control.
fn control_tuple(group: Group) -> BasisTuple {
    let e = match group {
        Group::T => OneParticleIndex::T { m: 1 },
        Group::SO2 => OneParticleIndex::SO2 { n: 0, m: 1 },
        Group::O3 => OneParticleIndex::O3 { n: 0, l: 1, m: 1 },
        Group::O3F => OneParticleIndex::O3F { n: 0, l: 1, m: 1, f: 0 },
    };
    BasisTuple::new(vec![e, e])
}

fn target_values<T: Scalar>(graph: &EvalGraph, config: &ParticleConfig<T>) -> Result<Vec<Complex<T>>> {
    let meta = graph.meta();
    let pooled = pool(meta.group, meta.degree.max_degree, config)?;
    let values = eval_graph(graph, &pooled)?;
    Ok(graph
        .nodes()
        .iter()
        .zip(values)
        .filter(|(n, _)| graph.is_target(&n.tuple))
        .map(|(_, v)| v)
        .collect())
}

fn max_deviation<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> T {
    a.iter()
        .zip(b)
        .map(|(x, y)| relative_deviation(*x, *y))
        .fold(T::zero(), T::max)
}

/// Compares target-node values before and after `trials` random global
/// rotations (and, for O(3), a point inversion).
pub fn invariance_check<T: Scalar, R: Rng + ?Sized>(
    graph: &EvalGraph,
    config: &ParticleConfig<T>,
    trials: usize,
    rng: &mut R,
) -> Result<InvarianceReport<T>> {
    let group = graph.meta().group;
    let base = target_values(graph, config)?;
    let mut rotation = T::zero();
    for _ in 0..trials {
        let alpha = T::lit(rng.gen::<f64>() * 2.0 * std::f64::consts::PI);
        let moved = target_values(graph, &config.rotated(alpha))?;
        rotation = rotation.max(max_deviation(&base, &moved));
    }
    let inversion = match group {
        Group::O3 | Group::O3F => Some(max_deviation(&base, &target_values(graph, &config.inverted())?)),
        _ => None,
    };
    let ctrl = control_tuple(group);
    let elements = ctrl.elements().to_vec();
    let before = naive_eval(&ctrl, &PooledBasis::direct(&elements, config)?)?;
    let turned = config.rotated(T::FRAC_PI_2());
    let after = naive_eval(&ctrl, &PooledBasis::direct(&elements, &turned)?)?;
    Ok(InvarianceReport { rotation, inversion, control: relative_deviation(before, after) })
}
