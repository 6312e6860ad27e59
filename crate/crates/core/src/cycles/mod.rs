//! Parametrized curves and surfaces in `◇_n`, admissibility, modulus
//! classification and the boundary operator.

mod curve;
mod surface;
mod zero;

pub use curve::{
    boundary_curve, check_admissible_curve, degeneracy, face_points, is_degenerate, modulus_classify,
    CurveAdmissibility, Degeneracy, FacePoint, ModulusClassification, PlaceClass,
};
pub use surface::{
    boundary_surface, boundary_surface_with, check_admissible_surface, check_admissible_surface_with, surface_faces,
    surface_faces_with, ComponentClass, FaceCurve, FaceKind, FaceResult, ParamSurface, SurfaceAdmissibility, UserFace,
};
pub use zero::{PointValue, ZeroCycle, ZeroPoint};

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{ArithError, RatFunc, Symbol, UniRat};
use crate::forms::FormError;
use crate::geometry::GeometryError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CycleError {
    #[error("invalid cycle: {0}")]
    Invalid(String),
    #[error("face point violates the boundary conditions: {0}")]
    FaceViolation(String),
    #[error("face t{i} = {j} of {surface} needs a user parametrization for factor {factor}")]
    NeedsUserInput { surface: String, i: usize, j: String, factor: String },
    #[error("improper surface: {0}")]
    ImproperSurface(String),
    #[error("capability limit: {0}")]
    CapabilityLimit(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Form(#[from] FormError),
}

impl CycleError {
    /// Whether the failure is a limit of the tool rather than of the input.
    pub fn is_capability_limit(&self) -> bool {
        matches!(
            self,
            CycleError::NeedsUserInput { .. }
                | CycleError::CapabilityLimit(_)
                | CycleError::Geometry(GeometryError::SplitRequired { .. })
        )
    }
}

/// A map `P^1 -> ◇̂_n`, `s -> (x(s), t_1(s), ..., t_n(s))`.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamCurve {
    param: Symbol,
    m: u32,
    x: RatFunc,
    t: Vec<RatFunc>,
    ux: UniRat,
    ut: Vec<UniRat>,
}

impl ParamCurve {
    pub fn new(param: Symbol, m: u32, x: RatFunc, t: Vec<RatFunc>) -> Result<Self, CycleError> {
        if m < 2 {
            return Err(CycleError::Invalid(format!("modulus {m} < 2")));
        }
        if t.is_empty() {
            return Err(CycleError::Invalid("no cube coordinates".into()));
        }
        let conv = |f: &RatFunc, what: &str| {
            UniRat::from_ratfunc(f, &param)
                .map_err(|_| CycleError::Invalid(format!("{what} involves a variable other than {param}")))
        };
        let ux = conv(&x, "x")?;
        if ux.is_zero() {
            return Err(CycleError::Invalid("x is identically 0".into()));
        }
        let mut ut = Vec::with_capacity(t.len());
        for (k, f) in t.iter().enumerate() {
            let name = format!("t{}", k + 1);
            if f.is_zero() {
                return Err(CycleError::Invalid(format!("{name} is identically 0")));
            }
            if f.is_one() {
                return Err(CycleError::Invalid(format!("{name} is identically 1")));
            }
            ut.push(conv(f, &name)?);
        }
        if ux.is_constant() && ut.iter().all(UniRat::is_constant) {
            return Err(CycleError::Invalid("parametrization is constant".into()));
        }
        Ok(ParamCurve { param, m, x, t, ux, ut })
    }

    pub fn param(&self) -> &Symbol {
        &self.param
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    /// Number of cube coordinates.
    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn x(&self) -> &RatFunc {
        &self.x
    }

    /// `t_i`, 1-based.
    pub fn t(&self, i: usize) -> &RatFunc {
        &self.t[i - 1]
    }

    pub fn ts(&self) -> &[RatFunc] {
        &self.t
    }

    pub fn ux(&self) -> &UniRat {
        &self.ux
    }

    /// `t_i` as a univariate function, 1-based.
    pub fn ut(&self, i: usize) -> &UniRat {
        &self.ut[i - 1]
    }

    /// The coordinate substitution `x -> x(s)`, `t_i -> t_i(s)`.
    pub fn coordinate_map(&self) -> BTreeMap<Symbol, RatFunc> {
        let mut map = BTreeMap::new();
        map.insert(Symbol::x(), self.x.clone());
        for (k, f) in self.t.iter().enumerate() {
            map.insert(Symbol::t(k + 1), f.clone());
        }
        map
    }

    /// Precomposition with `s -> phi(s)`.
    pub fn reparametrize(&self, phi: &RatFunc) -> Result<Self, CycleError> {
        let sub = |f: &RatFunc| f.substitute_one(&self.param, phi);
        let x = sub(&self.x)?;
        let t = self.t.iter().map(sub).collect::<Result<Vec<_>, _>>()?;
        ParamCurve::new(self.param.clone(), self.m, x, t)
    }

    /// Appends a constant (or varying) cube coordinate.
    pub fn with_extra_coordinate(&self, f: RatFunc) -> Result<Self, CycleError> {
        let mut t = self.t.clone();
        t.push(f);
        ParamCurve::new(self.param.clone(), self.m, self.x.clone(), t)
    }

    pub fn render(&self) -> String {
        let mut parts = vec![format!("x = {}", self.x)];
        for (k, f) in self.t.iter().enumerate() {
            parts.push(format!("t{} = {}", k + 1, f));
        }
        format!("[{}] ({})", self.param, parts.join(", "))
    }
}

impl fmt::Debug for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// An integer combination of curves sharing `n` and `m`.
#[derive(Clone, Debug, Default)]
pub struct Cycle {
    pub terms: Vec<(i64, ParamCurve)>,
    /// `(n, m)`, kept when every term has cancelled.
    shape: Option<(usize, u32)>,
}

impl Cycle {
    pub fn zero() -> Self {
        Cycle::default()
    }

    /// The empty cycle on `◇̂_n` with modulus `m`.
    pub fn empty(n: usize, m: u32) -> Self {
        Cycle { terms: Vec::new(), shape: Some((n, m)) }
    }

    pub fn single(c: ParamCurve) -> Self {
        let shape = Some((c.n(), c.modulus()));
        Cycle { terms: vec![(1, c)], shape }
    }

    pub fn shape(&self) -> Option<(usize, u32)> {
        self.shape
    }

    fn unify(&mut self, shape: (usize, u32)) -> Result<(), CycleError> {
        match self.shape {
            Some(s) if s != shape => Err(CycleError::Invalid(format!(
                "dimension mismatch: ({}, m={}) vs ({}, m={})",
                s.0, s.1, shape.0, shape.1
            ))),
            _ => {
                self.shape = Some(shape);
                Ok(())
            }
        }
    }

    pub fn push(&mut self, k: i64, c: ParamCurve) -> Result<(), CycleError> {
        self.unify((c.n(), c.modulus()))?;
        if k != 0 {
            self.terms.push((k, c));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cycle) -> Result<Cycle, CycleError> {
        let mut out = self.clone();
        if let Some(s) = other.shape {
            out.unify(s)?;
        }
        for (k, c) in &other.terms {
            out.push(*k, c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Cycle {
        let terms = self.terms.iter().filter(|_| k != 0).map(|(a, c)| (a * k, c.clone())).collect();
        Cycle { terms, shape: self.shape }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Signed sum of the boundaries of the curves.
    pub fn boundary(&self) -> Result<ZeroCycle, CycleError> {
        let mut z = ZeroCycle::zero();
        for (k, c) in &self.terms {
            z = z.add(&boundary_curve(c)?.scale(*k));
        }
        Ok(z)
    }
}
