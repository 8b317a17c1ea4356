//! The model-function abstraction consumed by projection and Monte Carlo.

use crate::error::Result;
use crate::scalar::Scalar;

/// A pure map from a physical parameter vector to labeled outputs.
///
/// Implementations are called concurrently from several threads.
pub trait Model<T: Scalar>: Sync {
    fn output_labels(&self) -> Vec<String>;

    fn evaluate(&self, theta: &[T]) -> Result<Vec<T>>;
}

/// Adapter turning a closure into a [`Model`].
pub struct FnModel<F> {
    labels: Vec<String>,
    f: F,
}

impl<F> FnModel<F> {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>, f: F) -> Self {
        Self {
            labels: labels.into_iter().map(Into::into).collect(),
            f,
        }
    }
}

impl<T, F> Model<T> for FnModel<F>
where
    T: Scalar,
    F: Fn(&[T]) -> Result<Vec<T>> + Sync,
{
    fn output_labels(&self) -> Vec<String> {
        self.labels.clone()
    }

    fn evaluate(&self, theta: &[T]) -> Result<Vec<T>> {
        (self.f)(theta)
    }
}

impl<T: Scalar, M: Model<T> + ?Sized + Sync> Model<T> for &M {
    fn output_labels(&self) -> Vec<String> {
        (**self).output_labels()
    }

    fn evaluate(&self, theta: &[T]) -> Result<Vec<T>> {
        (**self).evaluate(theta)
    }
}
