use crate::forms::Form;

/// Labelled residuals of an audit; only nonzero ones are kept.
#[derive(Clone, Debug, Default)]
pub struct Residuals {
    pub checked: usize,
    pub failures: Vec<(String, Form)>,
}

impl Residuals {
    pub fn new() -> Residuals {
        Residuals::default()
    }

    pub fn check(&mut self, label: impl FnOnce() -> String, residual: Form) {
        self.checked += 1;
        if !residual.is_zero() {
            self.failures.push((label(), residual));
        }
    }

    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: Residuals) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}
