//! Bound quiver algebras `KQ/I` with length-homogeneous relations.
//!
//! Because every relation is homogeneous in path length, the quotient splits
//! degree by degree. In each degree the relation span is put in echelon form
//! with the largest paths as pivots; the remaining paths form the normal-form
//! basis and every other path is rewritten in terms of them.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::rref_rows;
use crate::quiver::{compose_paths, ArrowId, Path, Quiver, Vertex};

pub const DEFAULT_NILP: usize = 3;
const PATH_CAP: usize = 2_000_000;

/// A generator of the ideal of relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// The path itself is zero.
    Monomial(Path),
    /// `p - q`; both paths are parallel and of equal length.
    Binomial(Path, Path),
}

impl Relation {
    pub fn len(&self) -> usize {
        match self {
            Relation::Monomial(p) | Relation::Binomial(p, _) => p.len(),
        }
    }

    pub fn render(&self, q: &Quiver) -> String {
        match self {
            Relation::Monomial(p) => q.render(p),
            Relation::Binomial(p, r) => format!("{} - {}", q.render(p), q.render(r)),
        }
    }

    fn validate(&self, q: &Quiver) -> Result<()> {
        match self {
            Relation::Monomial(p) => {
                if p.len() < 2 {
                    return Err(Error::InvalidRelation(format!(
                        "`{}` has length {} < 2",
                        q.render(p),
                        p.len()
                    )));
                }
            }
            Relation::Binomial(p, r) => {
                if p.len() != r.len() {
                    return Err(Error::InvalidRelation(format!(
                        "`{}` mixes lengths {} and {}",
                        self.render(q),
                        p.len(),
                        r.len()
                    )));
                }
                if p.source() != r.source() || p.target() != r.target() {
                    return Err(Error::InvalidRelation(format!(
                        "`{}` is not parallel",
                        self.render(q)
                    )));
                }
                if p.len() < 2 {
                    return Err(Error::InvalidRelation(format!(
                        "`{}` has length {} < 2",
                        self.render(q),
                        p.len()
                    )));
                }
                if p == r {
                    return Err(Error::InvalidRelation(format!(
                        "`{}` is trivially zero",
                        self.render(q)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Field-independent description of an algebra: what the `.alg` format holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub field: FieldSpec,
    pub nilp: usize,
    /// Optional stacking partition `(E', E'')` by vertex name.
    pub partition: Option<(Vec<String>, Vec<String>)>,
}

impl AlgebraSpec {
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Self {
        AlgebraSpec {
            quiver,
            relations,
            field: FieldSpec::Rational,
            nilp: DEFAULT_NILP,
            partition: None,
        }
    }

    pub fn build<F: Field>(&self, field: &F) -> Result<Arc<Algebra<F>>> {
        Algebra::build(field, self.quiver.clone(), self.relations.clone(), self.nilp).map(Arc::new)
    }

    pub fn with_field(mut self, field: FieldSpec) -> Self {
        self.field = field;
        self
    }

    pub fn with_nilp(mut self, nilp: usize) -> Self {
        self.nilp = nilp;
        self
    }
}

type Sparse<F> = Vec<(usize, <F as Field>::Elem)>;

/// A finite-dimensional algebra `KQ/I` with its normal-form basis.
#[derive(Debug)]
pub struct Algebra<F: Field> {
    field: F,
    quiver: Quiver,
    relations: Vec<Relation>,
    nilp: usize,
    basis: Vec<Path>,
    degree_offsets: Vec<usize>,
    normal_forms: HashMap<Path, Sparse<F>>,
    table: Vec<Sparse<F>>,
    monomial: bool,
    vertex_basis: Vec<usize>,
    arrow_basis: Vec<usize>,
    from_vertex: Vec<Vec<usize>>,
}

impl<F: Field> Algebra<F> {
    /// Build `KQ/I`. Fails on malformed relations or if `J^nilp` is nonzero.
    pub fn build(field: &F, quiver: Quiver, relations: Vec<Relation>, nilp: usize) -> Result<Self> {
        if nilp < 2 {
            return Err(Error::InvalidRelation(format!("nilpotency bound {nilp} < 2")));
        }
        for r in &relations {
            r.validate(&quiver)?;
        }
        let f = field;
        let n_vertices = quiver.vertex_count();
        let mut basis: Vec<Path> = (0..n_vertices).map(Path::trivial).collect();
        let mut degree_offsets = vec![0, n_vertices];
        let mut normal_forms: HashMap<Path, Sparse<F>> = HashMap::new();
        for (i, p) in basis.iter().enumerate() {
            normal_forms.insert(p.clone(), vec![(i, f.one())]);
        }
        let mut monomial = true;
        let mut total_paths = n_vertices;

        let mut prev_paths: Vec<Path> = Vec::new();
        let mut prev_rows: Vec<F::Vector> = Vec::new();
        for d in 1..=nilp {
            let mut paths: Vec<Path> = if d == 1 {
                (0..quiver.arrow_count()).map(|a| quiver.arrow_path(a)).collect()
            } else {
                let mut next = Vec::new();
                for p in &prev_paths {
                    for a in quiver.arrows_from(p.target()) {
                        next.push(compose_paths(&quiver.arrow_path(a), p).expect("composable"));
                    }
                }
                next
            };
            paths.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
            total_paths += paths.len();
            if total_paths > PATH_CAP {
                return Err(Error::Budget { cap: PATH_CAP });
            }
            let n = paths.len();
            let col: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, n - 1 - i)).collect();

            let mut rows: Vec<F::Vector> = Vec::new();
            for r in relations.iter().filter(|r| r.len() == d) {
                let mut v = f.zeros(n);
                match r {
                    Relation::Monomial(p) => f.set(&mut v, col[p], f.one()),
                    Relation::Binomial(p, q) => {
                        f.set(&mut v, col[p], f.one());
                        f.set(&mut v, col[q], f.neg(&f.one()));
                    }
                }
                rows.push(v);
            }
            let prev_n = prev_paths.len();
            for prow in &prev_rows {
                let entries: Vec<(&Path, F::Elem)> = (0..prev_n)
                    .filter_map(|c| {
                        let x = f.get(prow, c);
                        (!f.is_zero(&x)).then(|| (&prev_paths[prev_n - 1 - c], x))
                    })
                    .collect();
                for a in 0..quiver.arrow_count() {
                    let ap = quiver.arrow_path(a);
                    let mut left = f.zeros(n);
                    let mut right = f.zeros(n);
                    let (mut any_l, mut any_r) = (false, false);
                    for (p, x) in &entries {
                        if let Some(lp) = compose_paths(&ap, p) {
                            f.set(&mut left, col[&lp], x.clone());
                            any_l = true;
                        }
                        if let Some(rp) = compose_paths(p, &ap) {
                            f.set(&mut right, col[&rp], x.clone());
                            any_r = true;
                        }
                    }
                    if any_l {
                        rows.push(left);
                    }
                    if any_r {
                        rows.push(right);
                    }
                }
            }
            let (rows, pivots) = rref_rows(f, n, rows);
            if rows.iter().any(|r| {
                let mut nz = 0;
                for c in 0..n {
                    if !f.is_zero(&f.get(r, c)) {
                        nz += 1;
                    }
                }
                nz != 1
            }) {
                monomial = false;
            }

            if d == nilp {
                if pivots.len() != n {
                    return Err(Error::NotNilpotent { bound: nilp });
                }
                break;
            }

            let mut is_pivot = vec![false; n];
            for &p in &pivots {
                is_pivot[p] = true;
            }
            let mut basis_of_col = vec![usize::MAX; n];
            // Ascending path order is descending column order.
            for c in (0..n).rev() {
                if !is_pivot[c] {
                    basis_of_col[c] = basis.len();
                    basis.push(paths[n - 1 - c].clone());
                }
            }
            for c in 0..n {
                if !is_pivot[c] {
                    normal_forms.insert(paths[n - 1 - c].clone(), vec![(basis_of_col[c], f.one())]);
                }
            }
            for (r, &pc) in rows.iter().zip(pivots.iter()) {
                let mut nf = Vec::new();
                for c in (0..n).rev() {
                    if c != pc {
                        let x = f.get(r, c);
                        if !f.is_zero(&x) {
                            debug_assert!(!is_pivot[c]);
                            nf.push((basis_of_col[c], f.neg(&x)));
                        }
                    }
                }
                nf.sort_by_key(|e| e.0);
                normal_forms.insert(paths[n - 1 - pc].clone(), nf);
            }
            degree_offsets.push(basis.len());
            prev_paths = paths;
            prev_rows = rows;
            if prev_paths.is_empty() {
                break;
            }
        }
        while degree_offsets.len() < nilp + 1 {
            degree_offsets.push(basis.len());
        }

        let dim = basis.len();
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let prod = match compose_paths(&basis[i], &basis[j]) {
                    Some(p) if p.len() < nilp => normal_forms.get(&p).cloned().unwrap_or_default(),
                    _ => Vec::new(),
                };
                table.push(prod);
            }
        }
        let vertex_basis: Vec<usize> = (0..n_vertices).collect();
        let arrow_basis: Vec<usize> = (0..quiver.arrow_count())
            .map(|a| {
                let nf = &normal_forms[&quiver.arrow_path(a)];
                nf[0].0
            })
            .collect();
        let mut from_vertex = vec![Vec::new(); n_vertices];
        for (i, p) in basis.iter().enumerate() {
            from_vertex[p.source()].push(i);
        }

        Ok(Algebra {
            field: field.clone(),
            quiver,
            relations,
            nilp,
            basis,
            degree_offsets,
            normal_forms,
            table,
            monomial,
            vertex_basis,
            arrow_basis,
            from_vertex,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn nilp(&self) -> usize {
        self.nilp
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// True when the ideal of relations is spanned by paths.
    pub fn is_monomial(&self) -> bool {
        self.monomial
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].len()
    }

    /// Basis indices of the paths of length exactly `d`.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        if d + 1 >= self.degree_offsets.len() {
            return self.basis.len()..self.basis.len();
        }
        self.degree_offsets[d]..self.degree_offsets[d + 1]
    }

    pub fn max_degree(&self) -> usize {
        self.basis.iter().map(|p| p.len()).max().unwrap_or(0)
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        match self.normal_forms.get(p) {
            Some(nf) if nf.len() == 1 && self.basis[nf[0].0] == *p => Some(nf[0].0),
            _ => None,
        }
    }

    pub fn vertex_element(&self, v: Vertex) -> usize {
        self.vertex_basis[v]
    }

    pub fn arrow_element(&self, a: ArrowId) -> usize {
        self.arrow_basis[a]
    }

    /// Basis indices of the paths starting at `v`, i.e. a basis of `Λv`.
    pub fn paths_from(&self, v: Vertex) -> &[usize] {
        &self.from_vertex[v]
    }

    /// The normal form of a path as sparse coordinates.
    pub fn normal_form(&self, p: &Path) -> Sparse<F> {
        if p.len() >= self.nilp {
            return Vec::new();
        }
        self.normal_forms.get(p).cloned().unwrap_or_default()
    }

    pub fn is_zero_path(&self, p: &Path) -> bool {
        self.normal_form(p).is_empty()
    }

    pub fn element_of_path(&self, p: &Path) -> F::Vector {
        let f = &self.field;
        let mut v = f.zeros(self.dim());
        for (i, x) in self.normal_form(p) {
            f.set(&mut v, i, x);
        }
        v
    }

    /// `b_i · b_j` as sparse coordinates.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.table[i * self.basis.len() + j]
    }

    pub fn multiply(&self, x: &F::Vector, y: &F::Vector) -> F::Vector {
        let f = &self.field;
        let n = self.dim();
        let mut out = f.zeros(n);
        let xs: Vec<(usize, F::Elem)> = (0..n)
            .filter_map(|i| {
                let a = f.get(x, i);
                (!f.is_zero(&a)).then_some((i, a))
            })
            .collect();
        let ys: Vec<(usize, F::Elem)> = (0..n)
            .filter_map(|i| {
                let a = f.get(y, i);
                (!f.is_zero(&a)).then_some((i, a))
            })
            .collect();
        for (i, a) in &xs {
            for (j, b) in &ys {
                let ab = f.mul(a, b);
                for (k, c) in self.mul_basis(*i, *j) {
                    let cur = f.get(&out, *k);
                    f.set(&mut out, *k, f.add(&cur, &f.mul(&ab, c)));
                }
            }
        }
        out
    }

    /// Basis indices spanning `J^k`.
    pub fn radical_power(&self, k: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) >= k).collect()
    }

    pub fn render_basis(&self, i: usize) -> String {
        self.quiver.render(&self.basis[i])
    }

    pub fn render_element(&self, x: &F::Vector) -> String {
        let f = &self.field;
        let terms: Vec<String> = (0..self.dim())
            .filter_map(|i| {
                let a = f.get(x, i);
                if f.is_zero(&a) {
                    None
                } else if a == f.one() {
                    Some(self.render_basis(i))
                } else {
                    Some(format!("{}·{}", f.render(&a), self.render_basis(i)))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    pub fn spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            quiver: self.quiver.clone(),
            relations: self.relations.clone(),
            field: self.field.spec(),
            nilp: self.nilp,
            partition: None,
        }
    }

    pub fn info(&self) -> AlgebraInfo {
        let q = &self.quiver;
        AlgebraInfo {
            field: self.field.spec().to_string(),
            vertices: q.vertex_names().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowInfo {
                    name: a.name.clone(),
                    source: q.vertex_name(a.source).to_string(),
                    target: q.vertex_name(a.target).to_string(),
                })
                .collect(),
            relations: self.relations.iter().map(|r| r.render(q)).collect(),
            nilp: self.nilp,
            dimension: self.dim(),
            monomial: self.monomial,
            sources: q.sources().iter().map(|&v| q.vertex_name(v).to_string()).collect(),
            basis: (0..self.dim()).map(|i| self.render_basis(i)).collect(),
            radical_dims: (0..=self.nilp).map(|k| self.radical_power(k).len()).collect(),
            projective_dims: (0..q.vertex_count())
                .map(|v| (q.vertex_name(v).to_string(), self.paths_from(v).len()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowInfo {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// Serializable summary of an algebra.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraInfo {
    pub field: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowInfo>,
    pub relations: Vec<String>,
    pub nilp: usize,
    pub dimension: usize,
    pub monomial: bool,
    pub sources: Vec<String>,
    pub basis: Vec<String>,
    pub radical_dims: Vec<usize>,
    pub projective_dims: Vec<(String, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Rationals};

    fn square() -> (Quiver, Vec<Relation>) {
        let mut q = Quiver::new();
        for v in ["1", "2", "3", "4"] {
            q.add_vertex(v).unwrap();
        }
        q.add_arrow("a", "1", "2").unwrap();
        q.add_arrow("b", "1", "3").unwrap();
        q.add_arrow("c", "2", "4").unwrap();
        q.add_arrow("d", "3", "4").unwrap();
        let r = Relation::Binomial(q.parse_path("c*a").unwrap(), q.parse_path("d*b").unwrap());
        (q, vec![r])
    }

    #[test]
    fn commutative_square() {
        let (q, rels) = square();
        let alg = Algebra::build(&Rationals, q, rels, 3).unwrap();
        assert_eq!(alg.dim(), 4 + 4 + 1);
        assert!(!alg.is_monomial());
        let q = alg.quiver();
        let ca = alg.element_of_path(&q.parse_path("c*a").unwrap());
        let db = alg.element_of_path(&q.parse_path("d*b").unwrap());
        assert_eq!(ca, db);
        let c = alg.element_of_path(&q.parse_path("c").unwrap());
        let a = alg.element_of_path(&q.parse_path("a").unwrap());
        assert_eq!(alg.multiply(&c, &a), ca);
        assert!(Rationals.is_zero_vec(&alg.multiply(&a, &c)));
    }

    #[test]
    fn rejects_bad_relations() {
        let (q, _) = square();
        let short = Relation::Monomial(q.parse_path("a").unwrap());
        assert!(Algebra::build(&Gf2, q.clone(), vec![short], 3).is_err());
        let skew = Relation::Binomial(q.parse_path("c*a").unwrap(), q.parse_path("b").unwrap());
        assert!(Algebra::build(&Gf2, q.clone(), vec![skew], 3).is_err());
        let mut lq = Quiver::new();
        lq.add_vertex("v").unwrap();
        lq.add_arrow("e", "v", "v").unwrap();
        assert!(matches!(
            Algebra::build(&Gf2, lq.clone(), vec![], 3),
            Err(Error::NotNilpotent { bound: 3 })
        ));
        let sq = Relation::Monomial(lq.parse_path("e*e").unwrap());
        assert_eq!(Algebra::build(&Gf2, lq, vec![sq], 3).unwrap().dim(), 2);
    }

    #[test]
    fn one_vertex_is_the_field() {
        let mut q = Quiver::new();
        q.add_vertex("x").unwrap();
        let alg = Algebra::build(&Rationals, q, vec![], 3).unwrap();
        assert_eq!(alg.dim(), 1);
        assert!(alg.is_monomial());
    }
}
