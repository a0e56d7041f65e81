//! Dehn twists acting on mod-2 homology.
//!
//! The twist along a class `a` acts by the transvection
//! `x -> x + (x . a) a`. Words are applied left to right: the first twist in
//! the sequence acts first.

use std::sync::Arc;

use crate::error::{check_len, Error, Result};
use crate::gf2::BitVector;
use crate::quad_form::{HValue, InnerSpace, QuadraticRefinement};

/// A twist along a nonzero two-sided class (`a . a = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twist {
    space: Arc<InnerSpace>,
    curve: BitVector,
    // Q a, so that x . a = dot(x, dual).
    dual: BitVector,
}

impl Twist {
    pub fn new(space: Arc<InnerSpace>, curve: BitVector) -> Result<Self> {
        check_len(space.dimension(), curve.len())?;
        if curve.is_zero() {
            return Err(Error::InvalidTwist("curve class is zero".into()));
        }
        let dual = space.dual(&curve)?;
        if curve.dot_unchecked(&dual) {
            // One-sided classes have Moebius neighbourhoods and carry no twist;
            // x + (x.a)a would not even be invertible.
            return Err(Error::InvalidTwist(format!(
                "class {curve} has odd self-intersection"
            )));
        }
        Ok(Self { space, curve, dual })
    }

    pub fn curve(&self) -> &BitVector {
        &self.curve
    }

    pub fn space(&self) -> &Arc<InnerSpace> {
        &self.space
    }

    /// `x + (x . a) a`.
    pub fn apply(&self, x: &BitVector) -> Result<BitVector> {
        check_len(self.curve.len(), x.len())?;
        let mut out = x.clone();
        self.apply_in_place(&mut out);
        Ok(out)
    }

    pub(crate) fn apply_in_place(&self, x: &mut BitVector) {
        if x.dot_unchecked(&self.dual) {
            *x ^= &self.curve;
        }
    }
}

/// A composition of twists over one space, applied first-to-last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistWord {
    space: Arc<InnerSpace>,
    twists: Vec<Twist>,
}

impl TwistWord {
    pub fn empty(space: Arc<InnerSpace>) -> Self {
        Self {
            space,
            twists: Vec::new(),
        }
    }

    pub fn new(space: Arc<InnerSpace>, twists: Vec<Twist>) -> Result<Self> {
        for t in &twists {
            check_len(space.dimension(), t.curve.len())?;
        }
        Ok(Self { space, twists })
    }

    /// Builds a word from curve classes. Zero classes act as the identity
    /// and are dropped.
    pub fn from_classes<'a>(
        space: Arc<InnerSpace>,
        classes: impl IntoIterator<Item = &'a BitVector>,
    ) -> Result<Self> {
        let mut twists = Vec::new();
        for c in classes {
            check_len(space.dimension(), c.len())?;
            if !c.is_zero() {
                twists.push(Twist::new(space.clone(), c.clone())?);
            }
        }
        Ok(Self { space, twists })
    }

    pub fn push(&mut self, twist: Twist) -> Result<()> {
        check_len(self.space.dimension(), twist.curve.len())?;
        self.twists.push(twist);
        Ok(())
    }

    pub fn twists(&self) -> &[Twist] {
        &self.twists
    }

    pub fn len(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn space(&self) -> &Arc<InnerSpace> {
        &self.space
    }

    pub fn reversed(&self) -> TwistWord {
        Self {
            space: self.space.clone(),
            twists: self.twists.iter().rev().cloned().collect(),
        }
    }

    pub fn apply(&self, x: &BitVector) -> Result<BitVector> {
        check_len(self.space.dimension(), x.len())?;
        let mut out = x.clone();
        for t in &self.twists {
            t.apply_in_place(&mut out);
        }
        Ok(out)
    }
}

/// The form `x -> g(h(x))` where `h` is the word's action.
pub fn pullback(g: &QuadraticRefinement, word: &TwistWord) -> Result<QuadraticRefinement> {
    let d = g.dimension();
    check_len(d, word.space.dimension())?;
    let values = (0..d)
        .map(|i| {
            let image = word.apply(&BitVector::unit(d, i))?;
            Ok(g.eval_unchecked(&image))
        })
        .collect::<Result<Vec<HValue>>>()?;
    QuadraticRefinement::new(g.space().clone(), values)
}

/// The pairing vector `Q a` of the functional `x -> g(T_a x) - g(x)`.
///
/// When `g(a) = 0` the difference equals `embed(x . a)`, so the functional
/// is represented by `Q a`. Any other value of `g(a)` is rejected.
pub fn twist_functional(g: &QuadraticRefinement, a: &BitVector) -> Result<BitVector> {
    let value = g.eval(a)?;
    if value != HValue::ZERO {
        return Err(Error::Precondition(format!(
            "twist functional needs g(a) = 0, found g({a}) = {value}"
        )));
    }
    g.space().dual(a)
}
