//! Quivers, relations, dimension vectors, weights, representations and the
//! base-change group action.
//!
//! Conventions: a path written in traversal order `x1 x2` evaluates as
//! `M(x2)·M(x1)` (later arrows applied after earlier ones), and the group
//! acts on functions by `(g·f)(M) = f(g^{-1}·M)` with semi-invariants of
//! weight θ satisfying `g·f = χ_θ(g)·f`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// Finite directed multigraph. Loops and parallel arrows are allowed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let vset: BTreeSet<&String> = vertices.iter().collect();
        if vset.len() != vertices.len() {
            return Err(Error::Precondition("duplicate vertex names".into()));
        }
        let mut ids = BTreeSet::new();
        let mut built = Vec::with_capacity(arrows.len());
        for (id, tail, head) in arrows {
            if !ids.insert(id.clone()) {
                return Err(Error::Precondition(format!("duplicate arrow id {id}")));
            }
            let t = vertices
                .iter()
                .position(|v| *v == tail)
                .ok_or_else(|| Error::Precondition(format!("unknown tail vertex {tail}")))?;
            let h = vertices
                .iter()
                .position(|v| *v == head)
                .ok_or_else(|| Error::Precondition(format!("unknown head vertex {head}")))?;
            built.push(Arrow { id, tail: t, head: h });
        }
        Ok(Quiver {
            vertices,
            arrows: built,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    /// True iff the quiver contains a directed cycle (loops count).
    pub fn has_cycle(&self) -> bool {
        // Kahn's algorithm.
        let n = self.n_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.head] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for a in &self.arrows {
                if a.tail == v {
                    indeg[a.head] -= 1;
                    if indeg[a.head] == 0 {
                        queue.push(a.head);
                    }
                }
            }
        }
        seen != n
    }
}

/// Non-negative integer per vertex.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        assert_eq!(self.len(), other.len());
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.0[v] > 0).collect()
    }
}

/// Integer per vertex (θ); doubles as the character χ_θ of the base-change
/// group.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> i64 {
        self.0[v]
    }

    pub fn scale(&self, m: i64) -> Weight {
        Weight(self.0.iter().map(|&x| x * m).collect())
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// Euler-Ringel form: sum_x d(x)e(x) - sum_a d(ta)e(ha).
pub fn euler_form(q: &Quiver, d: &DimVector, e: &DimVector) -> Result<i64> {
    if d.len() != q.n_vertices() || e.len() != q.n_vertices() {
        return Err(Error::DimensionMismatch(
            "euler_form: dimension vector length != vertex count".into(),
        ));
    }
    let mut acc: i64 = (0..q.n_vertices()).map(|x| (d.get(x) * e.get(x)) as i64).sum();
    for a in q.arrows() {
        acc -= (d.get(a.tail) * e.get(a.head)) as i64;
    }
    Ok(acc)
}

/// θ(d) = sum_x θ(x) d(x).
pub fn theta_eval(theta: &Weight, d: &DimVector) -> Result<i64> {
    if theta.len() != d.len() {
        return Err(Error::DimensionMismatch(
            "theta_eval: weight and dimension vector lengths differ".into(),
        ));
    }
    Ok(theta
        .0
        .iter()
        .zip(&d.0)
        .map(|(&t, &n)| t * n as i64)
        .sum())
}

/// Composable arrow sequence, or the lazy path at a vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Path {
    base: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(vertex: usize) -> Self {
        Path {
            base: vertex,
            arrows: Vec::new(),
        }
    }

    pub fn new(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        if arrows.is_empty() {
            return Err(Error::Precondition(
                "empty arrow list: use Path::lazy for lazy paths".into(),
            ));
        }
        for (k, w) in arrows.windows(2).enumerate() {
            if q.arrow(w[0]).head != q.arrow(w[1]).tail {
                return Err(Error::BadPath { step: k });
            }
        }
        let base = q.arrow(arrows[0]).tail;
        Ok(Path { base, arrows })
    }

    pub fn from_ids(q: &Quiver, ids: &[&str]) -> Result<Self> {
        let arrows = ids
            .iter()
            .map(|id| {
                q.arrow_index(id)
                    .ok_or_else(|| Error::Precondition(format!("unknown arrow id {id}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Path::new(q, arrows)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn tail(&self) -> usize {
        self.base
    }

    pub fn head(&self, q: &Quiver) -> usize {
        match self.arrows.last() {
            Some(&a) => q.arrow(a).head,
            None => self.base,
        }
    }

    pub fn arrow_indices(&self) -> &[usize] {
        &self.arrows
    }

    pub fn concat(&self, q: &Quiver, next: &Path) -> Result<Path> {
        if self.head(q) != next.tail() {
            return Err(Error::BadPath { step: self.len() });
        }
        if next.is_empty() {
            return Ok(self.clone());
        }
        if self.is_empty() {
            return Ok(next.clone());
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Path::new(q, arrows)
    }
}

/// Linear combination of parallel paths of length at least 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn new(q: &Quiver, terms: Vec<(Scalar, Path)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Precondition("relation needs at least one term".into()));
        }
        let t0 = terms[0].1.tail();
        let h0 = terms[0].1.head(q);
        for (c, p) in &terms {
            if c.field() != Field::Q {
                return Err(Error::Precondition(
                    "relation coefficients live over Q".into(),
                ));
            }
            if p.len() < 2 {
                return Err(Error::Precondition(
                    "relations use paths of length at least 2".into(),
                ));
            }
            if p.tail() != t0 || p.head(q) != h0 {
                return Err(Error::Precondition("relation paths must be parallel".into()));
            }
        }
        Ok(Relation { terms })
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    pub fn tail(&self) -> usize {
        self.terms[0].1.tail()
    }

    pub fn head(&self, q: &Quiver) -> usize {
        self.terms[0].1.head(q)
    }
}

/// Exact matrix assignment per arrow, with a dimension vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Representation {
    dim: DimVector,
    field: Field,
    mats: Vec<Matrix>,
}

impl Representation {
    pub fn new(q: &Quiver, dim: DimVector, field: Field, mats: Vec<Matrix>) -> Result<Self> {
        if dim.len() != q.n_vertices() {
            return Err(Error::DimensionMismatch(
                "dimension vector length != vertex count".into(),
            ));
        }
        if mats.len() != q.n_arrows() {
            return Err(Error::DimensionMismatch(
                "one matrix per arrow required".into(),
            ));
        }
        for (i, m) in mats.iter().enumerate() {
            let a = q.arrow(i);
            if m.rows() != dim.get(a.head) || m.cols() != dim.get(a.tail) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {}: matrix is {}x{}, expected {}x{}",
                    a.id,
                    m.rows(),
                    m.cols(),
                    dim.get(a.head),
                    dim.get(a.tail)
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Representation { dim, field, mats })
    }

    pub fn zero(q: &Quiver, dim: DimVector, field: Field) -> Self {
        let mats = q
            .arrows()
            .iter()
            .map(|a| Matrix::zero(dim.get(a.head), dim.get(a.tail), field))
            .collect();
        Representation { dim, field, mats }
    }

    /// Seeded random representation with integer entries in [-bound, bound]
    /// (their residues over a prime field).
    pub fn random(q: &Quiver, dim: &DimVector, field: Field, rng: &mut ChaCha8Rng, bound: i64) -> Self {
        let mats = q
            .arrows()
            .iter()
            .map(|a| {
                Matrix::from_fn(dim.get(a.head), dim.get(a.tail), field, |_, _| {
                    Scalar::from_int(rng.gen_range(-bound..=bound), field)
                })
            })
            .collect();
        Representation {
            dim: dim.clone(),
            field,
            mats,
        }
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn matrix(&self, arrow: usize) -> &Matrix {
        &self.mats[arrow]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn set_matrix(&mut self, arrow: usize, m: Matrix) {
        assert_eq!(m.field(), self.field);
        self.mats[arrow] = m;
    }

    pub fn reduce_mod(&self, p: u64) -> Result<Representation> {
        Ok(Representation {
            dim: self.dim.clone(),
            field: Field::Fp(p),
            mats: self
                .mats
                .iter()
                .map(|m| m.reduce_mod(p))
                .collect::<Result<Vec<_>>>()?,
        })
    }
}

/// Invertible block per vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupElement {
    blocks: Vec<Matrix>,
}

impl GroupElement {
    pub fn new(blocks: Vec<Matrix>) -> Result<Self> {
        for (v, b) in blocks.iter().enumerate() {
            if !b.is_square() {
                return Err(Error::NonSquare {
                    rows: b.rows(),
                    cols: b.cols(),
                });
            }
            if b.det()?.is_zero() {
                return Err(Error::SingularBlock { vertex: v });
            }
        }
        Ok(GroupElement { blocks })
    }

    pub fn identity(dim: &DimVector, field: Field) -> Self {
        GroupElement {
            blocks: dim.0.iter().map(|&n| Matrix::identity(n, field)).collect(),
        }
    }

    /// Seeded random invertible element, by rejection.
    pub fn random(dim: &DimVector, field: Field, rng: &mut ChaCha8Rng, bound: i64) -> Self {
        let blocks = dim
            .0
            .iter()
            .map(|&n| loop {
                let m = Matrix::from_fn(n, n, field, |_, _| {
                    Scalar::from_int(rng.gen_range(-bound..=bound), field)
                });
                if !m.det().expect("square").is_zero() {
                    break m;
                }
            })
            .collect();
        GroupElement { blocks }
    }

    /// Diagonal element with the given scalar per vertex (1x1 blocks scaled,
    /// larger blocks scalar multiples of the identity).
    pub fn scalar_blocks(dim: &DimVector, values: &[Scalar]) -> Result<Self> {
        let blocks = dim
            .0
            .iter()
            .zip(values)
            .map(|(&n, s)| Matrix::identity(n, s.field()).scale(s))
            .collect();
        GroupElement::new(blocks)
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn field(&self) -> Field {
        self.blocks
            .first()
            .map(|b| b.field())
            .unwrap_or(Field::Q)
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupElement { blocks })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            blocks: self
                .blocks
                .iter()
                .map(|b| b.inverse().expect("square").expect("invertible"))
                .collect(),
        }
    }
}

/// χ_θ(g) = prod_x det g(x)^{θ(x)}.
pub fn chi_theta(theta: &Weight, g: &GroupElement) -> Result<Scalar> {
    if theta.len() != g.blocks().len() {
        return Err(Error::DimensionMismatch(
            "chi_theta: weight length != block count".into(),
        ));
    }
    let field = g.field();
    let mut acc = Scalar::one(field);
    for (v, b) in g.blocks().iter().enumerate() {
        let d = b.det()?;
        let e = theta.get(v);
        if d.is_zero() && e < 0 {
            return Err(Error::SingularBlock { vertex: v });
        }
        if e != 0 {
            acc = &acc * &d.pow(e).ok_or(Error::SingularBlock { vertex: v })?;
        }
    }
    Ok(acc)
}

/// Product of the arrow matrices along a path, later arrows applied after
/// earlier ones. The lazy path evaluates to the identity.
pub fn eval_path(q: &Quiver, m: &Representation, p: &Path) -> Result<Matrix> {
    let mut acc = Matrix::identity(m.dim().get(p.tail()), m.field());
    for (step, &a) in p.arrow_indices().iter().enumerate() {
        if q.arrow(a).tail != if step == 0 { p.tail() } else { q.arrow(p.arrow_indices()[step - 1]).head } {
            return Err(Error::BadPath { step });
        }
        acc = m.matrix(a).mul(&acc)?;
    }
    Ok(acc)
}

/// Indices of relations violated by `m`; empty iff `m` satisfies all of them.
pub fn check_relations(q: &Quiver, m: &Representation, rels: &[Relation]) -> Result<Vec<usize>> {
    let mut violated = Vec::new();
    for (i, rel) in rels.iter().enumerate() {
        let rows = m.dim().get(rel.head(q));
        let cols = m.dim().get(rel.tail());
        let mut acc = Matrix::zero(rows, cols, m.field());
        for (c, p) in rel.terms() {
            let coeff = match m.field() {
                Field::Q => c.clone(),
                Field::Fp(pr) => c.reduce_mod(pr)?,
            };
            acc = acc.add(&eval_path(q, m, p)?.scale(&coeff))?;
        }
        if !acc.is_zero() {
            violated.push(i);
        }
    }
    Ok(violated)
}

/// (g·M)(a) = g(ha) M(a) g(ta)^{-1}.
pub fn act(q: &Quiver, g: &GroupElement, m: &Representation) -> Result<Representation> {
    let inv = g.inverse();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| g.block(a.head).mul(m.matrix(i))?.mul(inv.block(a.tail)))
        .collect::<Result<Vec<_>>>()?;
    Representation::new(q, m.dim().clone(), m.field(), mats)
}

/// Matrix of the intertwiner system
/// `phi = (phi(x))_x  ->  (phi(ha) M(a) - N(a) phi(ta))_a`
/// in the canonical coordinates (vertices then arrows, entries row-major).
pub fn intertwiner_matrix(q: &Quiver, m: &Representation, n: &Representation) -> Result<Matrix> {
    if m.field() != n.field() {
        return Err(Error::FieldMismatch);
    }
    let field = m.field();
    let nv = q.n_vertices();
    // Input coordinates: phi(x) is n.dim(x) x m.dim(x), row-major.
    let mut in_offsets = vec![0usize; nv + 1];
    for x in 0..nv {
        in_offsets[x + 1] = in_offsets[x] + n.dim().get(x) * m.dim().get(x);
    }
    let in_dim = in_offsets[nv];
    let mut out_offsets = vec![0usize; q.n_arrows() + 1];
    for (i, a) in q.arrows().iter().enumerate() {
        out_offsets[i + 1] = out_offsets[i] + n.dim().get(a.head) * m.dim().get(a.tail);
    }
    let out_dim = out_offsets[q.n_arrows()];
    let mut sys = Matrix::zero(out_dim, in_dim, field);
    for (ai, a) in q.arrows().iter().enumerate() {
        let rows = n.dim().get(a.head);
        let cols = m.dim().get(a.tail);
        for r in 0..rows {
            for k in 0..cols {
                let row = out_offsets[ai] + r * cols + k;
                // + (phi(ha))_{r,s} * M(a)_{s,k}
                for s in 0..m.dim().get(a.head) {
                    let coef = m.matrix(ai).get(s, k).clone();
                    if !coef.is_zero() {
                        let col = in_offsets[a.head] + r * m.dim().get(a.head) + s;
                        let v = sys.get(row, col) + &coef;
                        sys.set(row, col, v);
                    }
                }
                // - N(a)_{r,s} * (phi(ta))_{s,k}
                for s in 0..n.dim().get(a.tail) {
                    let coef = n.matrix(ai).get(r, s).clone();
                    if !coef.is_zero() {
                        let col = in_offsets[a.tail] + s * m.dim().get(a.tail) + k;
                        let v = sys.get(row, col) - &coef;
                        sys.set(row, col, v);
                    }
                }
            }
        }
    }
    Ok(sys)
}

/// Basis of intertwiner tuples phi: M -> N (phi(ha)M(a) = N(a)phi(ta)).
pub fn hom_space(q: &Quiver, m: &Representation, n: &Representation) -> Result<Vec<Vec<Matrix>>> {
    let sys = intertwiner_matrix(q, m, n)?;
    let field = m.field();
    let basis = sys.nullspace();
    let mut out = Vec::with_capacity(basis.len());
    for vec in basis {
        let mut mats = Vec::with_capacity(q.n_vertices());
        let mut off = 0;
        for x in 0..q.n_vertices() {
            let (rows, cols) = (n.dim().get(x), m.dim().get(x));
            mats.push(Matrix::from_fn(rows, cols, field, |r, c| {
                vec[off + r * cols + c].clone()
            }));
            off += rows * cols;
        }
        out.push(mats);
    }
    Ok(out)
}

pub fn hom_dim(q: &Quiver, m: &Representation, n: &Representation) -> Result<usize> {
    let sys = intertwiner_matrix(q, m, n)?;
    Ok(sys.cols() - sys.rank())
}

/// Options for the isomorphism search.
#[derive(Clone, Copy, Debug)]
pub struct IsoOptions {
    pub random_trials: usize,
    pub coeff_bound: i64,
    pub exhaustive_cap: u128,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            random_trials: 64,
            coeff_bound: 3,
            exhaustive_cap: 200_000,
        }
    }
}

/// Isomorphism search. Definite `None` when hom dimensions obstruct or an
/// exhaustive coefficient search over F_p finds nothing; an exhausted search
/// without a decision is the `IsoInconclusive` error.
pub fn is_isomorphic(
    q: &Quiver,
    m: &Representation,
    n: &Representation,
    seed: u64,
    opts: &IsoOptions,
) -> Result<Option<GroupElement>> {
    if m.field() != n.field() {
        return Err(Error::FieldMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let hmn = hom_space(q, m, n)?;
    if hmn.is_empty() {
        return Ok(None);
    }
    let dnm = hom_dim(q, n, m)?;
    let dmm = hom_dim(q, m, m)?;
    let dnn = hom_dim(q, n, n)?;
    if hmn.len() != dnm || dmm != dnn {
        return Ok(None);
    }
    let field = m.field();
    let k = hmn.len();
    let combine = |coeffs: &[Scalar]| -> Option<GroupElement> {
        let mut blocks = Vec::with_capacity(q.n_vertices());
        for x in 0..q.n_vertices() {
            let mut b = Matrix::zero(n.dim().get(x), m.dim().get(x), field);
            for (c, h) in coeffs.iter().zip(&hmn) {
                if !c.is_zero() {
                    b = b.add(&h[x].scale(c)).expect("shapes match");
                }
            }
            if !b.is_square() || b.det().expect("square").is_zero() {
                return None;
            }
            blocks.push(b);
        }
        Some(GroupElement { blocks })
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..opts.random_trials {
        let coeffs: Vec<Scalar> = (0..k)
            .map(|_| match field {
                Field::Q => Scalar::from_int(rng.gen_range(-opts.coeff_bound..=opts.coeff_bound), field),
                Field::Fp(p) => Scalar::from_int(rng.gen_range(0..p as i64), field),
            })
            .collect();
        if let Some(g) = combine(&coeffs) {
            return Ok(Some(g));
        }
    }
    // Exhaustive small-coefficient search.
    let values: Vec<Scalar> = match field {
        Field::Q => (-opts.coeff_bound..=opts.coeff_bound)
            .map(|v| Scalar::from_int(v, field))
            .collect(),
        Field::Fp(p) => (0..p as i64).map(|v| Scalar::from_int(v, field)).collect(),
    };
    let total = (values.len() as u128).checked_pow(k as u32);
    match total {
        Some(t) if t <= opts.exhaustive_cap => {
            let mut idx = vec![0usize; k];
            loop {
                let coeffs: Vec<Scalar> = idx.iter().map(|&i| values[i].clone()).collect();
                if coeffs.iter().any(|c| !c.is_zero()) {
                    if let Some(g) = combine(&coeffs) {
                        return Ok(Some(g));
                    }
                }
                let mut pos = 0;
                loop {
                    if pos == k {
                        // Over F_p the exhaustive search is complete.
                        return match field {
                            Field::Fp(_) => Ok(None),
                            Field::Q => Err(Error::IsoInconclusive {
                                trials: opts.random_trials + t as usize,
                            }),
                        };
                    }
                    idx[pos] += 1;
                    if idx[pos] < values.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
            }
        }
        _ => Err(Error::IsoInconclusive {
            trials: opts.random_trials,
        }),
    }
}

/// Block-diagonal direct sum; the empty sum is the zero representation of
/// dimension 0.
pub fn direct_sum(q: &Quiver, reps: &[&Representation], field: Field) -> Result<Representation> {
    let mut dim = DimVector::zero(q.n_vertices());
    for r in reps {
        if r.field() != field {
            return Err(Error::FieldMismatch);
        }
        dim = dim.add(r.dim());
    }
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, _)| {
            let mut acc = Matrix::zero(0, 0, field);
            for r in reps {
                acc = acc.block_diag(r.matrix(i));
            }
            acc
        })
        .collect();
    Representation::new(q, dim, field, mats)
}

/// g · (block upper-triangular extension of M'' by M' with off-diagonal X).
pub fn filt_assemble(
    q: &Quiver,
    g: &GroupElement,
    m1: &Representation,
    m2: &Representation,
    x: &[Matrix],
) -> Result<Representation> {
    if m1.field() != m2.field() {
        return Err(Error::FieldMismatch);
    }
    if x.len() != q.n_arrows() {
        return Err(Error::DimensionMismatch("one X block per arrow".into()));
    }
    let field = m1.field();
    let dim = m1.dim().add(m2.dim());
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let xb = &x[i];
            if xb.rows() != m1.dim().get(a.head) || xb.cols() != m2.dim().get(a.tail) {
                return Err(Error::DimensionMismatch(format!(
                    "X block for arrow {} has shape {}x{}, expected {}x{}",
                    a.id,
                    xb.rows(),
                    xb.cols(),
                    m1.dim().get(a.head),
                    m2.dim().get(a.tail)
                )));
            }
            let rows = dim.get(a.head);
            let cols = dim.get(a.tail);
            let (r1, c1) = (m1.dim().get(a.head), m1.dim().get(a.tail));
            Ok(Matrix::from_fn(rows, cols, field, |r, c| {
                if r < r1 && c < c1 {
                    m1.matrix(i).get(r, c).clone()
                } else if r < r1 {
                    xb.get(r, c - c1).clone()
                } else if c < c1 {
                    Scalar::zero(field)
                } else {
                    m2.matrix(i).get(r - r1, c - c1).clone()
                }
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let assembled = Representation::new(q, dim, field, mats)?;
    act(q, g, &assembled)
}

/// Limit of λ(t)·M as t -> 0 for the 1-parameter subgroup with the given
/// integer weight per (vertex, basis index). Entry (i,j) of arrow a scales by
/// t^{λ(ha,i) − λ(ta,j)}; the limit exists iff no nonzero entry has a
/// negative exponent, and zeroes every strictly positive one.
pub fn one_ps_limit(q: &Quiver, m: &Representation, lambda: &[Vec<i64>]) -> Result<Option<Representation>> {
    if lambda.len() != q.n_vertices() {
        return Err(Error::DimensionMismatch("lambda: one list per vertex".into()));
    }
    for (x, l) in lambda.iter().enumerate() {
        if l.len() != m.dim().get(x) {
            return Err(Error::DimensionMismatch(format!(
                "lambda at vertex {x}: {} weights for dimension {}",
                l.len(),
                m.dim().get(x)
            )));
        }
    }
    let mut mats = Vec::with_capacity(q.n_arrows());
    for (i, a) in q.arrows().iter().enumerate() {
        let mut out = m.matrix(i).clone();
        for r in 0..out.rows() {
            for c in 0..out.cols() {
                if out.get(r, c).is_zero() {
                    continue;
                }
                let e = lambda[a.head][r] - lambda[a.tail][c];
                if e < 0 {
                    return Ok(None);
                }
                if e > 0 {
                    out.set(r, c, Scalar::zero(m.field()));
                }
            }
        }
        mats.push(out);
    }
    Ok(Some(Representation::new(q, m.dim().clone(), m.field(), mats)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{biserial, bs_band, bs_rep, commuting_squares, cs_rep};

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn random_quiver(rng: &mut ChaCha8Rng) -> Quiver {
        let n = rng.gen_range(1..=3);
        let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let m = rng.gen_range(0..=4);
        let arrows: Vec<(String, String, String)> = (0..m)
            .map(|i| {
                (
                    format!("e{i}"),
                    format!("v{}", rng.gen_range(0..n)),
                    format!("v{}", rng.gen_range(0..n)),
                )
            })
            .collect();
        Quiver::new(vertices, arrows).unwrap()
    }

    fn random_dim(rng: &mut ChaCha8Rng, n: usize, max: usize) -> DimVector {
        DimVector((0..n).map(|_| rng.gen_range(0..=max)).collect())
    }

    #[test]
    fn euler_form_no_arrows() {
        let q = Quiver::new(vec!["x".into(), "y".into()], vec![]).unwrap();
        let d = DimVector(vec![1, 1]);
        assert_eq!(euler_form(&q, &d, &d).unwrap(), 2);
    }

    #[test]
    fn euler_form_commuting_squares() {
        let inst = commuting_squares();
        let d = DimVector(vec![1, 1, 1]);
        assert_eq!(euler_form(&inst.quiver, &d, &d).unwrap(), 3 - 8);
    }

    #[test]
    fn euler_form_bilinear() {
        let mut r = rng(1);
        for _ in 0..30 {
            let q = random_quiver(&mut r);
            let n = q.n_vertices();
            let d = random_dim(&mut r, n, 3);
            let e1 = random_dim(&mut r, n, 3);
            let e2 = random_dim(&mut r, n, 3);
            let sum = e1.add(&e2);
            assert_eq!(
                euler_form(&q, &d, &sum).unwrap(),
                euler_form(&q, &d, &e1).unwrap() + euler_form(&q, &d, &e2).unwrap()
            );
            assert_eq!(
                euler_form(&q, &sum, &d).unwrap(),
                euler_form(&q, &e1, &d).unwrap() + euler_form(&q, &e2, &d).unwrap()
            );
        }
    }

    #[test]
    fn theta_eval_cases() {
        let theta = Weight(vec![2, -1, -1]);
        assert_eq!(theta_eval(&theta, &DimVector(vec![1, 1, 1])).unwrap(), 0);
        assert_eq!(theta_eval(&theta, &DimVector(vec![0, 0, 0])).unwrap(), 0);
        assert_eq!(theta_eval(&theta, &DimVector(vec![1, 0, 0])).unwrap(), 2);
        assert!(theta_eval(&theta, &DimVector(vec![1, 1])).is_err());
    }

    #[test]
    fn chi_theta_identity_is_one() {
        let theta = Weight(vec![2, -1, -1]);
        let g = GroupElement::identity(&DimVector(vec![2, 1, 3]), Field::Q);
        assert!(chi_theta(&theta, &g).unwrap().is_one());
    }

    #[test]
    fn chi_theta_scalar_blocks() {
        let theta = Weight(vec![2, -1, -1]);
        let dim = DimVector(vec![1, 1, 1]);
        let g = GroupElement::scalar_blocks(
            &dim,
            &[
                Scalar::from_int(2, Field::Q),
                Scalar::from_int(3, Field::Q),
                Scalar::from_int(5, Field::Q),
            ],
        )
        .unwrap();
        assert_eq!(chi_theta(&theta, &g).unwrap(), Scalar::rational(4, 15));
    }

    #[test]
    fn chi_theta_multiplicative() {
        let mut r = rng(2);
        let theta = Weight(vec![2, -1, 1]);
        let dim = DimVector(vec![2, 1, 2]);
        for _ in 0..10 {
            let g = GroupElement::random(&dim, Field::Q, &mut r, 3);
            let h = GroupElement::random(&dim, Field::Q, &mut r, 3);
            let gh = g.mul(&h).unwrap();
            assert_eq!(
                chi_theta(&theta, &gh).unwrap(),
                chi_theta(&theta, &g).unwrap() * chi_theta(&theta, &h).unwrap()
            );
        }
    }

    #[test]
    fn chi_theta_transvection_is_one() {
        // identity plus one off-diagonal entry has determinant 1
        let theta = Weight(vec![3, -2]);
        let mut b0 = Matrix::identity(3, Field::Q);
        b0.set(0, 2, Scalar::from_int(7, Field::Q));
        let g = GroupElement::new(vec![b0, Matrix::identity(2, Field::Q)]).unwrap();
        assert!(chi_theta(&theta, &g).unwrap().is_one());
    }

    #[test]
    fn eval_path_lazy_is_identity() {
        let inst = biserial();
        let m = bs_rep(&inst, [1, 2, 0, 3], Field::Q).unwrap();
        let p = Path::lazy(0);
        assert!(eval_path(&inst.quiver, &m, &p).unwrap().is_identity());
    }

    #[test]
    fn eval_path_biserial_string() {
        // rep (a,b,c,c') = (0,1,0,1): traversing ga then gp gives c'*c = 0
        let inst = biserial();
        let m = bs_rep(&inst, [0, 1, 0, 1], Field::Q).unwrap();
        let p = Path::from_ids(&inst.quiver, &["ga", "gp"]).unwrap();
        assert!(eval_path(&inst.quiver, &m, &p).unwrap().is_zero());
        // gp then ga gives c*c' = 0 as well here
        let p2 = Path::from_ids(&inst.quiver, &["gp", "ga"]).unwrap();
        assert!(eval_path(&inst.quiver, &m, &p2).unwrap().is_zero());
    }

    #[test]
    fn eval_of_concatenation_is_product() {
        let mut r = rng(3);
        let inst = biserial();
        for _ in 0..10 {
            let m = Representation::random(
                &inst.quiver,
                &DimVector(vec![2, 2, 2]),
                Field::Q,
                &mut r,
                3,
            );
            let p1 = Path::from_ids(&inst.quiver, &["al"]).unwrap();
            let p2 = Path::from_ids(&inst.quiver, &["ga", "gp"]).unwrap();
            let cat = p1.concat(&inst.quiver, &p2).unwrap();
            let lhs = eval_path(&inst.quiver, &m, &cat).unwrap();
            let rhs = eval_path(&inst.quiver, &m, &p2)
                .unwrap()
                .mul(&eval_path(&inst.quiver, &m, &p1).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn zero_representation_satisfies_relations() {
        let inst = commuting_squares();
        let z = Representation::zero(&inst.quiver, DimVector(vec![0, 0, 0]), Field::Q);
        assert!(check_relations(&inst.quiver, &z, &inst.relations)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn act_identity_trivial() {
        let inst = biserial();
        let m = bs_band(&inst, 2, Field::Q).unwrap();
        let g = GroupElement::identity(m.dim(), Field::Q);
        assert_eq!(act(&inst.quiver, &g, &m).unwrap(), m);
    }

    #[test]
    fn act_is_group_action() {
        let mut r = rng(4);
        let inst = biserial();
        let dim = DimVector(vec![2, 1, 2]);
        for _ in 0..10 {
            let m = Representation::random(&inst.quiver, &dim, Field::Q, &mut r, 2);
            let g = GroupElement::random(&dim, Field::Q, &mut r, 2);
            let h = GroupElement::random(&dim, Field::Q, &mut r, 2);
            let lhs = act(&inst.quiver, &g, &act(&inst.quiver, &h, &m).unwrap()).unwrap();
            let rhs = act(&inst.quiver, &g.mul(&h).unwrap(), &m).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn act_scalar_example() {
        let inst = biserial();
        let m = bs_rep(&inst, [1, 1, 0, 1], Field::Q).unwrap();
        let g = GroupElement::scalar_blocks(
            &DimVector(vec![1, 1, 1]),
            &[
                Scalar::from_int(1, Field::Q),
                Scalar::from_int(2, Field::Q),
                Scalar::from_int(1, Field::Q),
            ],
        )
        .unwrap();
        let gm = act(&inst.quiver, &g, &m).unwrap();
        let expect = bs_rep(&inst, [2, 1, 0, 2], Field::Q).unwrap();
        assert_eq!(gm, expect);
    }

    #[test]
    fn act_preserves_relations() {
        let mut r = rng(5);
        let inst = biserial();
        for _ in 0..10 {
            let m = bs_band(&inst, r.gen_range(1..5), Field::Q).unwrap();
            let g = GroupElement::random(m.dim(), Field::Q, &mut r, 2);
            let gm = act(&inst.quiver, &g, &m).unwrap();
            assert!(check_relations(&inst.quiver, &gm, &inst.relations)
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn hom_space_point_quiver() {
        let q = Quiver::new(vec!["x".into()], vec![]).unwrap();
        let m = Representation::zero(&q, DimVector(vec![1]), Field::Q);
        let basis = hom_space(&q, &m, &m).unwrap();
        assert_eq!(basis.len(), 1);
    }

    #[test]
    fn hom_space_distinct_stables_is_zero() {
        let inst = commuting_squares();
        let m = cs_rep(&inst, [1, 0, 0, 0], [1, 0, 0, 0], Field::Q).unwrap();
        let n = cs_rep(&inst, [0, 0, 0, 1], [0, 0, 0, 1], Field::Q).unwrap();
        assert_eq!(hom_dim(&inst.quiver, &m, &n).unwrap(), 0);
        assert_eq!(hom_dim(&inst.quiver, &m, &m).unwrap(), 1);
    }

    #[test]
    fn hom_space_additive_in_second_argument() {
        let mut r = rng(6);
        for _ in 0..15 {
            let q = random_quiver(&mut r);
            let n = q.n_vertices();
            let dm = random_dim(&mut r, n, 2);
            let d1 = random_dim(&mut r, n, 2);
            let d2 = random_dim(&mut r, n, 2);
            let m = Representation::random(&q, &dm, Field::Q, &mut r, 2);
            let n1 = Representation::random(&q, &d1, Field::Q, &mut r, 2);
            let n2 = Representation::random(&q, &d2, Field::Q, &mut r, 2);
            let sum = direct_sum(&q, &[&n1, &n2], Field::Q).unwrap();
            assert_eq!(
                hom_dim(&q, &m, &sum).unwrap(),
                hom_dim(&q, &m, &n1).unwrap() + hom_dim(&q, &m, &n2).unwrap()
            );
        }
    }

    #[test]
    fn hom_dim_invariant_under_action() {
        let mut r = rng(7);
        let inst = biserial();
        let dim = DimVector(vec![2, 2, 2]);
        for _ in 0..5 {
            let m = Representation::random(&inst.quiver, &dim, Field::Q, &mut r, 2);
            let n = Representation::random(&inst.quiver, &dim, Field::Q, &mut r, 2);
            let g = GroupElement::random(&dim, Field::Q, &mut r, 2);
            let d0 = hom_dim(&inst.quiver, &m, &n).unwrap();
            let gm = act(&inst.quiver, &g, &m).unwrap();
            let gn = act(&inst.quiver, &g, &n).unwrap();
            assert_eq!(hom_dim(&inst.quiver, &gm, &n).unwrap(), d0);
            assert_eq!(hom_dim(&inst.quiver, &m, &gn).unwrap(), d0);
        }
    }

    #[test]
    fn is_isomorphic_reflexive() {
        let inst = biserial();
        let m = bs_band(&inst, 3, Field::Q).unwrap();
        let g = is_isomorphic(&inst.quiver, &m, &m, 0, &IsoOptions::default())
            .unwrap()
            .expect("isomorphic to itself");
        assert_eq!(act(&inst.quiver, &g, &m).unwrap(), m);
    }

    #[test]
    fn is_isomorphic_scaled_tuples() {
        let inst = commuting_squares();
        let m = cs_rep(&inst, [1, 0, 0, 0], [1, 0, 0, 0], Field::Q).unwrap();
        let n = cs_rep(&inst, [2, 0, 0, 0], [6, 0, 0, 0], Field::Q).unwrap();
        let g = is_isomorphic(&inst.quiver, &m, &n, 1, &IsoOptions::default())
            .unwrap()
            .expect("scalar-equivalent");
        assert_eq!(act(&inst.quiver, &g, &m).unwrap(), n);
    }

    #[test]
    fn is_isomorphic_end_dimension_obstruction() {
        // Kronecker quiver over F_2: zero rep vs nonzero rep of dim (1,1)
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                ("u".into(), "1".into(), "2".into()),
                ("v".into(), "1".into(), "2".into()),
            ],
        )
        .unwrap();
        let f = Field::Fp(2);
        let dim = DimVector(vec![1, 1]);
        let m = Representation::zero(&q, dim.clone(), f);
        let n = Representation::new(
            &q,
            dim,
            f,
            vec![
                Matrix::from_int_rows(f, &[vec![1]]),
                Matrix::from_int_rows(f, &[vec![0]]),
            ],
        )
        .unwrap();
        assert_ne!(
            hom_dim(&q, &m, &m).unwrap(),
            hom_dim(&q, &n, &n).unwrap()
        );
        assert!(is_isomorphic(&q, &m, &n, 2, &IsoOptions::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn direct_sum_empty_and_dims() {
        let inst = biserial();
        let z = direct_sum(&inst.quiver, &[], Field::Q).unwrap();
        assert_eq!(z.dim(), &DimVector(vec![0, 0, 0]));
        let m = bs_rep(&inst, [1, 2, 0, 1], Field::Q).unwrap();
        let n = bs_band(&inst, 1, Field::Q).unwrap();
        let s = direct_sum(&inst.quiver, &[&m, &n], Field::Q).unwrap();
        assert_eq!(s.dim(), &DimVector(vec![3, 3, 3]));
    }

    #[test]
    fn direct_sum_relation_check_blockwise() {
        let mut r = rng(8);
        let inst = biserial();
        for _ in 0..10 {
            let dims = DimVector(vec![1, 1, 1]);
            let m = Representation::random(&inst.quiver, &dims, Field::Q, &mut r, 2);
            let n = Representation::random(&inst.quiver, &dims, Field::Q, &mut r, 2);
            let s = direct_sum(&inst.quiver, &[&m, &n], Field::Q).unwrap();
            let ok_m = check_relations(&inst.quiver, &m, &inst.relations).unwrap().is_empty();
            let ok_n = check_relations(&inst.quiver, &n, &inst.relations).unwrap().is_empty();
            let ok_s = check_relations(&inst.quiver, &s, &inst.relations).unwrap().is_empty();
            assert_eq!(ok_s, ok_m && ok_n);
        }
    }

    #[test]
    fn filt_assemble_zero_is_direct_sum() {
        let inst = biserial();
        let m1 = bs_rep(&inst, [1, 1, 0, 0], Field::Q).unwrap();
        let m2 = bs_rep(&inst, [0, 1, 0, 1], Field::Q).unwrap();
        let x: Vec<Matrix> = inst
            .quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zero(m1.dim().get(a.head), m2.dim().get(a.tail), Field::Q))
            .collect();
        let g = GroupElement::identity(&m1.dim().add(m2.dim()), Field::Q);
        let got = filt_assemble(&inst.quiver, &g, &m1, &m2, &x).unwrap();
        let want = direct_sum(&inst.quiver, &[&m1, &m2], Field::Q).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn filt_assemble_reconstructs_band() {
        // the band is an extension of the diagonal string by itself with
        // off-diagonal blocks over ga and gp
        let inst = biserial();
        let s = bs_rep(&inst, [1, 1, 0, 0], Field::Q).unwrap();
        let lambda = 4;
        let xval = |arrow: &str, v: i64| {
            (
                inst.quiver.arrow_index(arrow).unwrap(),
                Matrix::from_int_rows(Field::Q, &[vec![v]]),
            )
        };
        let mut x: Vec<Matrix> = inst
            .quiver
            .arrows()
            .iter()
            .map(|_| Matrix::zero(1, 1, Field::Q))
            .collect();
        for (i, m) in [xval("ga", 1), xval("gp", lambda)] {
            x[i] = m;
        }
        let g = GroupElement::identity(&DimVector(vec![2, 2, 2]), Field::Q);
        let got = filt_assemble(&inst.quiver, &g, &s, &s, &x).unwrap();
        let band = bs_band(&inst, lambda, Field::Q).unwrap();
        assert_eq!(got, band);
        assert!(check_relations(&inst.quiver, &got, &inst.relations)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn filt_assemble_flags_incompatible_extension() {
        // strings (0,1,0,1) as sub and (1,0,1,0) as quotient: the gp*ga
        // relation forces X_ga + X_gp = 0
        let inst = biserial();
        let sub = bs_rep(&inst, [0, 1, 0, 1], Field::Q).unwrap();
        let quot = bs_rep(&inst, [1, 0, 1, 0], Field::Q).unwrap();
        let g = GroupElement::identity(&DimVector(vec![2, 2, 2]), Field::Q);
        let mut x: Vec<Matrix> = inst
            .quiver
            .arrows()
            .iter()
            .map(|_| Matrix::zero(1, 1, Field::Q))
            .collect();
        let ga = inst.quiver.arrow_index("ga").unwrap();
        let gp = inst.quiver.arrow_index("gp").unwrap();
        x[ga] = Matrix::from_int_rows(Field::Q, &[vec![2]]);
        x[gp] = Matrix::from_int_rows(Field::Q, &[vec![-2]]);
        let good = filt_assemble(&inst.quiver, &g, &sub, &quot, &x).unwrap();
        assert!(check_relations(&inst.quiver, &good, &inst.relations)
            .unwrap()
            .is_empty());
        x[gp] = Matrix::from_int_rows(Field::Q, &[vec![5]]);
        let bad = filt_assemble(&inst.quiver, &g, &sub, &quot, &x).unwrap();
        assert!(!check_relations(&inst.quiver, &bad, &inst.relations)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn one_ps_limit_zero_weight_is_identity() {
        let inst = biserial();
        let m = bs_band(&inst, 2, Field::Q).unwrap();
        let lambda = vec![vec![0, 0]; 3];
        assert_eq!(one_ps_limit(&inst.quiver, &m, &lambda).unwrap().unwrap(), m);
    }

    #[test]
    fn one_ps_limit_degenerates_band_to_string_sum() {
        let inst = biserial();
        let m = bs_band(&inst, 3, Field::Q).unwrap();
        let lambda = vec![vec![1, 0]; 3];
        let lim = one_ps_limit(&inst.quiver, &m, &lambda).unwrap().unwrap();
        let s = bs_rep(&inst, [1, 1, 0, 0], Field::Q).unwrap();
        let want = direct_sum(&inst.quiver, &[&s, &s], Field::Q).unwrap();
        assert_eq!(lim, want);
        assert!(check_relations(&inst.quiver, &lim, &inst.relations)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn one_ps_limit_absent_on_negative_exponent() {
        let inst = biserial();
        let m = bs_band(&inst, 3, Field::Q).unwrap();
        let lambda = vec![vec![0, 1]; 3];
        assert!(one_ps_limit(&inst.quiver, &m, &lambda).unwrap().is_none());
    }

    #[test]
    fn one_ps_limit_preserves_relations_when_it_exists() {
        let mut r = rng(9);
        let inst = biserial();
        for _ in 0..20 {
            let lam = bs_band(&inst, r.gen_range(1..4), Field::Q).unwrap();
            let lambda: Vec<Vec<i64>> = (0..3)
                .map(|_| (0..2).map(|_| r.gen_range(-1..=1)).collect())
                .collect();
            if let Some(lim) = one_ps_limit(&inst.quiver, &lam, &lambda).unwrap() {
                assert!(check_relations(&inst.quiver, &lim, &inst.relations)
                    .unwrap()
                    .is_empty());
            }
        }
    }
}
