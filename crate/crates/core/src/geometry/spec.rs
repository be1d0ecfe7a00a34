//! Variety specifications: toric cones, polynomial parametrizations, linear
//! coordinate changes and joins.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{arg_err, Error, Result};
use crate::exactlin::{
    determinant_i64, rank_rational, rational_from_i64, rational_mod, FpMatrix, Matrix, PolyMatrix,
    PrimeField, Rational, RationalMatrix, SparsePolynomial,
};
use crate::matroid::{GroundSet, Matroid};

/// Entry bound for seeded generic coordinate changes.
pub const DEFAULT_CHANGE_HEIGHT: i64 = 10;

/// A monomial parametrization: coordinate `i` is `t^{a_i}` for column `a_i`
/// of the exponent matrix. With `homogenize`, a row of ones is appended so
/// the image is an affine cone; its parameter is the last one.
#[derive(Clone, Debug, PartialEq)]
pub struct ToricSpec {
    exponents: Vec<Vec<i64>>,
    homogenize: bool,
    labels: GroundSet,
}

impl ToricSpec {
    /// `exponents` is given row by row (rows are torus parameters).
    pub fn new(
        exponents: Vec<Vec<i64>>,
        homogenize: bool,
        labels: Option<GroundSet>,
    ) -> Result<Self> {
        let n = match exponents.first() {
            Some(r) => r.len(),
            None if homogenize => {
                return arg_err("exponent matrix needs at least one row to fix the column count")
            }
            None => return arg_err("empty exponent matrix"),
        };
        if n == 0 {
            return arg_err("exponent matrix has no columns");
        }
        if exponents.iter().any(|r| r.len() != n) {
            return arg_err("ragged exponent matrix");
        }
        let labels = match labels {
            Some(l) if l.len() != n => return arg_err("one label per exponent column required"),
            Some(l) => l,
            None => GroundSet::numbered("z", 0, n)?,
        };
        Ok(ToricSpec {
            exponents,
            homogenize,
            labels,
        })
    }

    /// Builds the spec from exponent columns.
    pub fn from_columns(
        columns: &[Vec<i64>],
        homogenize: bool,
        labels: Option<GroundSet>,
    ) -> Result<Self> {
        let d = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != d) {
            return arg_err("exponent columns of unequal length");
        }
        if d == 0 {
            return arg_err("exponent columns must be nonempty");
        }
        let rows = (0..d)
            .map(|j| columns.iter().map(|c| c[j]).collect())
            .collect();
        ToricSpec::new(rows, homogenize, labels)
    }

    pub fn labels(&self) -> &GroundSet {
        &self.labels
    }

    pub fn homogenize(&self) -> bool {
        self.homogenize
    }

    /// Exponent rows as supplied.
    pub fn raw_exponents(&self) -> &[Vec<i64>] {
        &self.exponents
    }

    /// Number of torus parameters before homogenization.
    pub fn torus_dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn coordinate_count(&self) -> usize {
        self.labels.len()
    }

    pub fn parameter_count(&self) -> usize {
        self.exponents.len() + usize::from(self.homogenize)
    }

    /// The exponent matrix actually used, including the homogenizing row.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        let mut rows = self.exponents.clone();
        if self.homogenize {
            rows.push(vec![1; self.coordinate_count()]);
        }
        rows
    }

    pub fn column(&self, i: usize) -> Vec<i64> {
        self.exponent_matrix().iter().map(|r| r[i]).collect()
    }

    /// Pairs of equal columns; each such pair is parallel in the matroid.
    pub fn duplicate_columns(&self) -> Vec<(usize, usize)> {
        let cols: Vec<Vec<i64>> = (0..self.coordinate_count())
            .map(|i| self.column(i))
            .collect();
        let mut out = Vec::new();
        for i in 0..cols.len() {
            for j in i + 1..cols.len() {
                if cols[i] == cols[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.exponents.iter().flatten().any(|&v| v < 0)
    }

    /// Exact column matroid of the (homogenized) exponent matrix over the rationals.
    pub fn column_matroid(&self) -> Result<Matroid> {
        let m = rational_from_i64(&self.exponent_matrix())?;
        Matroid::column_matroid(&m, Some(self.labels.clone()))
    }

    /// Dimension of the cone: rank of the homogenized exponent matrix.
    pub fn dimension(&self) -> Result<usize> {
        Ok(rank_rational(&rational_from_i64(&self.exponent_matrix())?))
    }

    /// Expands the monomials into polynomials; requires nonnegative exponents.
    /// Variables are `t1..td`, with `h` for the homogenizing parameter.
    pub fn to_polymap(&self) -> Result<PolyMapSpec> {
        if self.has_negative_exponents() {
            return Err(Error::Unsupported(
                "Laurent monomials have no polynomial expansion".into(),
            ));
        }
        let mut vars: Vec<String> = (1..=self.torus_dim()).map(|j| format!("t{j}")).collect();
        if self.homogenize {
            vars.push("h".into());
        }
        let rows = self.exponent_matrix();
        let components = (0..self.coordinate_count())
            .map(|i| {
                let e = rows.iter().map(|r| r[i] as u32).collect();
                SparsePolynomial::monomial(e, Rational::from_integer(1.into()))
            })
            .collect();
        PolyMapSpec::new(vars, components, Some(self.labels.clone()))
    }

    /// Entry `(j, i)` is `A_{j,i} t^{a_i} / t_j`; all parameters must be nonzero.
    pub fn jacobian_at(&self, field: PrimeField, point: &[u64]) -> Result<FpMatrix> {
        let rows = self.exponent_matrix();
        let d = rows.len();
        if point.len() != d {
            return arg_err(format!(
                "toric point needs {d} parameters, got {}",
                point.len()
            ));
        }
        if point.iter().any(|&t| t % field.modulus() == 0) {
            return arg_err("toric parameters must be nonzero");
        }
        let inv: Vec<u64> = point
            .iter()
            .map(|&t| field.inv(t).expect("nonzero"))
            .collect();
        let n = self.coordinate_count();
        let monomials: Vec<u64> = (0..n)
            .map(|i| {
                (0..d).fold(1, |acc, j| {
                    let p = field.pow_i64(point[j], rows[j][i]).expect("nonzero base");
                    field.mul(acc, p)
                })
            })
            .collect();
        let m = Matrix::from_fn(d, n, |j, i| {
            let a = field.reduce_i64(rows[j][i]);
            field.mul(field.mul(a, monomials[i]), inv[j])
        });
        Ok(FpMatrix::new(field, m))
    }
}

/// A parametrization by polynomials in named variables.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMapSpec {
    vars: Vec<String>,
    components: Vec<SparsePolynomial>,
    labels: GroundSet,
    jacobian: PolyMatrix,
}

impl PolyMapSpec {
    pub fn new(
        vars: Vec<String>,
        components: Vec<SparsePolynomial>,
        labels: Option<GroundSet>,
    ) -> Result<Self> {
        let m = vars.len();
        if components.is_empty() {
            return arg_err("a parametrization needs at least one component");
        }
        if components.iter().any(|c| c.nvars() != m) {
            return arg_err("every component must use the declared variables");
        }
        if components.iter().all(SparsePolynomial::is_zero) {
            return arg_err("at least one component must be nonzero");
        }
        let labels = match labels {
            Some(l) if l.len() != components.len() => {
                return arg_err("one label per component required")
            }
            Some(l) => l,
            None => GroundSet::numbered("z", 1, components.len())?,
        };
        let mut entries = Vec::with_capacity(m);
        for j in 0..m {
            entries.push(
                components
                    .iter()
                    .map(|c| c.partial(j))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let jacobian = if m == 0 {
            Matrix::from_fn(0, components.len(), |_, _| SparsePolynomial::zero(0))
        } else {
            Matrix::from_rows(entries)?
        };
        Ok(PolyMapSpec {
            vars,
            components,
            labels,
            jacobian,
        })
    }

    /// Parses components written in the expression grammar.
    pub fn parse(vars: &[&str], components: &[&str], labels: Option<GroundSet>) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let comps = components
            .iter()
            .map(|c| crate::exactlin::parse_poly(c, &vars))
            .collect::<Result<Vec<_>>>()?;
        PolyMapSpec::new(vars, comps, labels)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn components(&self) -> &[SparsePolynomial] {
        &self.components
    }

    pub fn labels(&self) -> &GroundSet {
        &self.labels
    }

    pub fn parameter_count(&self) -> usize {
        self.vars.len()
    }

    pub fn coordinate_count(&self) -> usize {
        self.components.len()
    }

    /// Symbolic Jacobian, parameters by coordinates.
    pub fn symbolic_jacobian(&self) -> &PolyMatrix {
        &self.jacobian
    }

    pub fn jacobian_at(&self, field: PrimeField, point: &[u64]) -> Result<FpMatrix> {
        let m = self.parameter_count();
        if point.len() != m {
            return arg_err(format!("point needs {m} parameters, got {}", point.len()));
        }
        let reduced = self
            .jacobian
            .to_rows()
            .into_iter()
            .flatten()
            .map(|p| p.reduce_mod(field))
            .collect::<Result<Vec<_>>>()?;
        let n = self.coordinate_count();
        let data = Matrix::from_fn(m, n, |j, i| reduced[j * n + i].eval(field, point));
        Ok(FpMatrix::new(field, data))
    }
}

/// A variety in new coordinates `z' = L z` for an invertible `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearChangeSpec {
    inner: Box<VarietySpec>,
    matrix: RationalMatrix,
    seed: Option<u64>,
}

impl LinearChangeSpec {
    pub fn new(inner: VarietySpec, matrix: RationalMatrix) -> Result<Self> {
        let n = inner.coordinate_count();
        if matrix.rows() != n || matrix.cols() != n {
            return arg_err(format!("coordinate change must be {n}x{n}"));
        }
        if rank_rational(&matrix) != n {
            return arg_err("coordinate change is singular");
        }
        Ok(LinearChangeSpec {
            inner: Box::new(inner),
            matrix,
            seed: None,
        })
    }

    /// A pseudorandom invertible integer change with entries in `[-height, height]`.
    pub fn seeded(inner: VarietySpec, seed: u64, height: i64) -> Result<Self> {
        let n = inner.coordinate_count();
        let rows = generic_integer_matrix(n, seed, height)?;
        let mut spec = LinearChangeSpec::new(inner, rational_from_i64(&rows)?)?;
        spec.seed = Some(seed);
        Ok(spec)
    }

    pub fn inner(&self) -> &VarietySpec {
        &self.inner
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Rewrites the map with the change applied to its coordinate functions.
    pub fn compose(&self) -> Result<PolyMapSpec> {
        compose_linear(&self.inner, &self.matrix)
    }

    fn jacobian_at(&self, field: PrimeField, point: &[u64]) -> Result<FpMatrix> {
        let j = self.inner.jacobian_at(field, point)?;
        let n = self.matrix.rows();
        // (J L^T)_{j,i} = sum_k J_{j,k} L_{i,k}
        let mut lt = Vec::with_capacity(n);
        for k in 0..n {
            lt.push(
                (0..n)
                    .map(|i| rational_mod(self.matrix.get(i, k), field))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let lt = Matrix::from_rows(lt)?;
        j.mul(&FpMatrix::new(field, lt))
    }
}

/// Seeded integer matrix with entries in `[-height, height]`, redrawn until invertible.
pub fn generic_integer_matrix(n: usize, seed: u64, height: i64) -> Result<Vec<Vec<i64>>> {
    if height < 1 {
        return arg_err("entry height must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-height..=height)).collect())
            .collect();
        if !num::Zero::is_zero(&determinant_i64(&rows)) {
            return Ok(rows);
        }
    }
    arg_err("failed to draw an invertible matrix")
}

/// The coordinate functions of `spec` transformed by `matrix`:
/// `f'_i = sum_k L_{ik} f_k`. Toric specs are expanded to polynomials first.
pub fn compose_linear(spec: &VarietySpec, matrix: &RationalMatrix) -> Result<PolyMapSpec> {
    let base = spec.to_polymap()?;
    let n = base.coordinate_count();
    if matrix.rows() != n || matrix.cols() != n {
        return arg_err(format!("coordinate change must be {n}x{n}"));
    }
    if rank_rational(matrix) != n {
        return arg_err("coordinate change is singular");
    }
    let m = base.parameter_count();
    let components = (0..n)
        .map(|i| {
            (0..n).fold(SparsePolynomial::zero(m), |acc, k| {
                &acc + &base.components()[k].scale(matrix.get(i, k))
            })
        })
        .collect();
    PolyMapSpec::new(
        base.vars().to_vec(),
        components,
        Some(base.labels().clone()),
    )
}

/// Any single parametrized cone.
#[derive(Clone, Debug, PartialEq)]
pub enum VarietySpec {
    Toric(ToricSpec),
    PolyMap(PolyMapSpec),
    LinearChange(LinearChangeSpec),
}

impl From<ToricSpec> for VarietySpec {
    fn from(s: ToricSpec) -> Self {
        VarietySpec::Toric(s)
    }
}

impl From<PolyMapSpec> for VarietySpec {
    fn from(s: PolyMapSpec) -> Self {
        VarietySpec::PolyMap(s)
    }
}

impl From<LinearChangeSpec> for VarietySpec {
    fn from(s: LinearChangeSpec) -> Self {
        VarietySpec::LinearChange(s)
    }
}

impl VarietySpec {
    pub fn labels(&self) -> &GroundSet {
        match self {
            VarietySpec::Toric(s) => s.labels(),
            VarietySpec::PolyMap(s) => s.labels(),
            VarietySpec::LinearChange(s) => s.inner.labels(),
        }
    }

    pub fn coordinate_count(&self) -> usize {
        self.labels().len()
    }

    pub fn parameter_count(&self) -> usize {
        match self {
            VarietySpec::Toric(s) => s.parameter_count(),
            VarietySpec::PolyMap(s) => s.parameter_count(),
            VarietySpec::LinearChange(s) => s.inner.parameter_count(),
        }
    }

    /// Whether the toric parameters must avoid zero.
    pub fn needs_nonzero_parameters(&self) -> bool {
        match self {
            VarietySpec::Toric(_) => true,
            VarietySpec::PolyMap(_) => false,
            VarietySpec::LinearChange(s) => s.inner.needs_nonzero_parameters(),
        }
    }

    /// Jacobian of the coordinate functions at a parameter point: a
    /// (parameters x coordinates) matrix whose row space is the cotangent
    /// image at the image point.
    pub fn jacobian_at(&self, field: PrimeField, point: &[u64]) -> Result<FpMatrix> {
        match self {
            VarietySpec::Toric(s) => s.jacobian_at(field, point),
            VarietySpec::PolyMap(s) => s.jacobian_at(field, point),
            VarietySpec::LinearChange(s) => s.jacobian_at(field, point),
        }
    }

    pub fn to_polymap(&self) -> Result<PolyMapSpec> {
        match self {
            VarietySpec::Toric(s) => s.to_polymap(),
            VarietySpec::PolyMap(s) => Ok(s.clone()),
            VarietySpec::LinearChange(s) => s.compose(),
        }
    }

    pub fn symbolic_jacobian(&self) -> Result<PolyMatrix> {
        Ok(self.to_polymap()?.symbolic_jacobian().clone())
    }

    /// Point `(a^{v_1}, .., a^{v_d})` of a one-parameter subgroup. For a
    /// homogenized toric spec, `v` covers the torus and the homogenizing
    /// parameter is set to one.
    pub fn subgroup_point(
        &self,
        field: PrimeField,
        direction: &[i64],
        base: i64,
    ) -> Result<Vec<u64>> {
        let a = field.reduce_i64(base);
        if a == 0 {
            return arg_err("subgroup base must be nonzero");
        }
        let powers = |v: &[i64]| -> Vec<u64> {
            v.iter()
                .map(|&k| field.pow_i64(a, k).expect("nonzero base"))
                .collect()
        };
        match self {
            VarietySpec::Toric(s) if s.homogenize() && direction.len() == s.torus_dim() => {
                let mut p = powers(direction);
                p.push(1);
                Ok(p)
            }
            VarietySpec::LinearChange(s) => s.inner.subgroup_point(field, direction, base),
            _ if direction.len() == self.parameter_count() => Ok(powers(direction)),
            _ => arg_err(format!(
                "direction vector has length {}, expected {}",
                direction.len(),
                self.parameter_count()
            )),
        }
    }

    /// Whether the algebraic matroid is available exactly, without sampling.
    pub fn as_toric(&self) -> Option<&ToricSpec> {
        match self {
            VarietySpec::Toric(s) => Some(s),
            _ => None,
        }
    }

    pub fn with_labels(self, labels: GroundSet) -> Result<Self> {
        if labels.len() != self.coordinate_count() {
            return arg_err("label count mismatch");
        }
        Ok(match self {
            VarietySpec::Toric(mut s) => {
                s.labels = labels;
                VarietySpec::Toric(s)
            }
            VarietySpec::PolyMap(mut s) => {
                s.labels = labels;
                VarietySpec::PolyMap(s)
            }
            VarietySpec::LinearChange(mut s) => {
                let inner = (*s.inner).clone().with_labels(labels)?;
                s.inner = Box::new(inner);
                VarietySpec::LinearChange(s)
            }
        })
    }
}

/// `X_1 + .. + X_s` inside a common ambient space.
#[derive(Clone, Debug, PartialEq)]
pub struct JoinSpec {
    summands: Vec<VarietySpec>,
}

impl From<VarietySpec> for JoinSpec {
    fn from(s: VarietySpec) -> Self {
        JoinSpec { summands: vec![s] }
    }
}

impl JoinSpec {
    pub fn new(summands: Vec<VarietySpec>) -> Result<Self> {
        let Some(first) = summands.first() else {
            return arg_err("a join needs at least one summand");
        };
        if summands.iter().any(|s| s.labels() != first.labels()) {
            return arg_err("join summands must share their coordinate labels");
        }
        Ok(JoinSpec { summands })
    }

    /// `X^{s}`, the join of `s` copies of `spec`.
    pub fn secant(spec: VarietySpec, s: usize) -> Result<Self> {
        if s == 0 {
            return arg_err("secant order must be at least 1");
        }
        JoinSpec::new(vec![spec; s])
    }

    /// The join repeated `s` times.
    pub fn repeat(&self, s: usize) -> Result<Self> {
        if s == 0 {
            return arg_err("secant order must be at least 1");
        }
        let mut summands = Vec::with_capacity(self.summands.len() * s);
        for _ in 0..s {
            summands.extend(self.summands.iter().cloned());
        }
        JoinSpec::new(summands)
    }

    pub fn summands(&self) -> &[VarietySpec] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn labels(&self) -> &GroundSet {
        self.summands[0].labels()
    }

    pub fn coordinate_count(&self) -> usize {
        self.labels().len()
    }

    pub fn parameter_count(&self) -> usize {
        self.summands.iter().map(VarietySpec::parameter_count).sum()
    }

    /// Vertical stack of the summands' Jacobians at one point each.
    pub fn join_jacobian_at(&self, field: PrimeField, points: &[Vec<u64>]) -> Result<FpMatrix> {
        if points.len() != self.summands.len() {
            return arg_err(format!(
                "join of {} summands needs as many points, got {}",
                self.summands.len(),
                points.len()
            ));
        }
        let blocks = self
            .summands
            .iter()
            .zip(points)
            .map(|(s, p)| s.jacobian_at(field, p))
            .collect::<Result<Vec<_>>>()?;
        FpMatrix::vstack(&blocks)
    }

    /// Stacked symbolic Jacobian with each summand in its own variables.
    pub fn symbolic_jacobian(&self) -> Result<PolyMatrix> {
        let total = self.parameter_count();
        let mut blocks = Vec::with_capacity(self.summands.len());
        let mut offset = 0;
        for s in &self.summands {
            let j = s.symbolic_jacobian()?;
            blocks.push(j.map(|p| p.embed(total, offset)));
            offset += s.parameter_count();
        }
        Matrix::vstack(&blocks)
    }
}
