use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use super::BoundValue;

/// An entry `m[i][j]` of a DBM: `x_i - x_j < value`, `x_i - x_j <= value`,
/// or no constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound<T> {
    Finite { value: T, strict: bool },
    Infinite,
}

impl<T: BoundValue> Bound<T> {
    pub fn le(value: T) -> Self {
        Bound::Finite {
            value,
            strict: false,
        }
    }

    pub fn lt(value: T) -> Self {
        Bound::Finite {
            value,
            strict: true,
        }
    }

    /// `(0, <=)`, the diagonal entry of a canonical DBM.
    pub fn zero() -> Self {
        Bound::le(T::zero())
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Bound::Finite { .. })
    }

    pub fn value(self) -> Option<T> {
        match self {
            Bound::Finite { value, .. } => Some(value),
            Bound::Infinite => None,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Bound::Finite { strict: true, .. })
    }

    /// Whether a difference `d` satisfies the bound; `d` and the bound are both
    /// scaled by `denom`.
    pub fn admits_scaled(self, d: i64, denom: i64) -> bool {
        match self {
            Bound::Infinite => true,
            Bound::Finite { value, strict } => {
                let v = value.to_i64().expect("bound fits i64") * denom;
                if strict {
                    d < v
                } else {
                    d <= v
                }
            }
        }
    }
}

impl<T: BoundValue> Add for Bound<T> {
    type Output = Self;

    /// Bound addition along a path. Panics on overflow of the scalar type.
    fn add(self, other: Self) -> Self {
        match (self, other) {
            (
                Bound::Finite {
                    value: a,
                    strict: sa,
                },
                Bound::Finite {
                    value: b,
                    strict: sb,
                },
            ) => Bound::Finite {
                value: a.checked_add(&b).expect("DBM bound arithmetic overflowed"),
                strict: sa || sb,
            },
            _ => Bound::Infinite,
        }
    }
}

impl<T: BoundValue> PartialOrd for Bound<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: BoundValue> Ord for Bound<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::Infinite, Bound::Infinite) => Ordering::Equal,
            (Bound::Infinite, _) => Ordering::Greater,
            (_, Bound::Infinite) => Ordering::Less,
            (
                Bound::Finite {
                    value: a,
                    strict: sa,
                },
                Bound::Finite {
                    value: b,
                    strict: sb,
                },
            ) => a.cmp(b).then_with(|| sb.cmp(sa)),
        }
    }
}

impl<T: BoundValue> fmt::Display for Bound<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Infinite => f.write_str("<inf"),
            Bound::Finite {
                value,
                strict: true,
            } => write!(f, "<{value}"),
            Bound::Finite {
                value,
                strict: false,
            } => write!(f, "<={value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order() {
        let b = |v: i32, s: bool| Bound::Finite {
            value: v,
            strict: s,
        };
        assert!(b(1, true) < b(1, false));
        assert!(b(1, false) < b(2, true));
        assert!(b(100, false) < Bound::Infinite);
        assert_eq!(b(1, true) + b(2, false), b(3, true));
        assert_eq!(b(1, false) + Bound::Infinite, Bound::<i32>::Infinite);
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_fatal() {
        let _ = Bound::le(i8::MAX) + Bound::le(1i8);
    }
}
