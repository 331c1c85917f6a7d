use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::geometry::Point;

/// Generic linear order on `Z^2` realized lexicographically.
///
/// `XThenNegY` behaves like `x - eps*y` for infinitesimal `eps > 0`, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LambdaFunctional {
    XThenNegY,
    XThenY,
    YThenNegX,
    YThenX,
}

impl LambdaFunctional {
    pub const ALL: [LambdaFunctional; 4] =
        [LambdaFunctional::XThenNegY, LambdaFunctional::XThenY, LambdaFunctional::YThenNegX, LambdaFunctional::YThenX];

    pub fn key(self, p: Point) -> (i64, i64) {
        match self {
            LambdaFunctional::XThenNegY => (p.x, -p.y),
            LambdaFunctional::XThenY => (p.x, p.y),
            LambdaFunctional::YThenNegX => (p.y, -p.x),
            LambdaFunctional::YThenX => (p.y, p.x),
        }
    }

    pub fn cmp(self, a: Point, b: Point) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    pub fn less(self, a: Point, b: Point) -> bool {
        self.key(a) < self.key(b)
    }

    pub fn name(self) -> &'static str {
        match self {
            LambdaFunctional::XThenNegY => "x-y",
            LambdaFunctional::XThenY => "xy",
            LambdaFunctional::YThenNegX => "y-x",
            LambdaFunctional::YThenX => "yx",
        }
    }
}

impl fmt::Display for LambdaFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LambdaFunctional {
    type Err = alloc::string::String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LambdaFunctional::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| alloc::format!("unknown lambda {s:?}; expected one of x-y, xy, y-x, yx"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_are_injective_and_parse() {
        let pts: alloc::vec::Vec<Point> = (-2..3).flat_map(|x| (-2..3).map(move |y| Point::new(x, y))).collect();
        for l in LambdaFunctional::ALL {
            for a in &pts {
                for b in &pts {
                    assert_eq!(l.key(*a) == l.key(*b), a == b);
                }
            }
            assert_eq!(l.name().parse::<LambdaFunctional>().unwrap(), l);
        }
        assert!("z".parse::<LambdaFunctional>().is_err());
        assert!(LambdaFunctional::XThenNegY.less(Point::new(0, 1), Point::new(0, 0)));
    }
}
