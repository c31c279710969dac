/// Result of an exhaustive check: either it holds, or it fails with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<W> {
    Pass,
    Fail(W),
}

impl<W> Outcome<W> {
    pub fn from_witness(witness: Option<W>) -> Self {
        match witness {
            None => Outcome::Pass,
            Some(w) => Outcome::Fail(w),
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Outcome::Pass => None,
            Outcome::Fail(w) => Some(w),
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Outcome::Pass => None,
            Outcome::Fail(w) => Some(w),
        }
    }
}
