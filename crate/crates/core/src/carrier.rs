//! Points and finite carriers.
//!
//! Points are structured labels: user atoms, the two injections of a disjoint
//! union (`L.x`, `R.x`), pairs of a cartesian product (`(x,y)`), finite subsets
//! (`{x,y}`) and finite multisets (`[x:2,y:1]`). Carriers keep their points
//! sorted by the structural order, which makes them canonical.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const RESERVED: &[char] = &['.', '(', ')', ',', '{', '}', '[', ']', ':'];

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Atom(String),
    Left(Box<Point>),
    Right(Box<Point>),
    Pair(Box<Point>, Box<Point>),
    /// Sorted, duplicate-free.
    Set(Vec<Point>),
    /// Sorted by point, multiplicities positive.
    Bag(Vec<(Point, u32)>),
}

impl Point {
    pub fn atom(label: impl Into<String>) -> Result<Point> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::InvalidLabel(label, "empty label".into()));
        }
        if let Some(c) = label
            .chars()
            .find(|c| RESERVED.contains(c) || c.is_whitespace())
        {
            return Err(Error::InvalidLabel(
                label.clone(),
                format!("reserved character {c:?}"),
            ));
        }
        Ok(Point::Atom(label))
    }

    pub fn left(p: Point) -> Point {
        Point::Left(Box::new(p))
    }

    pub fn right(p: Point) -> Point {
        Point::Right(Box::new(p))
    }

    pub fn pair(a: Point, b: Point) -> Point {
        Point::Pair(Box::new(a), Box::new(b))
    }

    pub fn set(mut items: Vec<Point>) -> Result<Point> {
        items.sort();
        if let Some(w) = items.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].to_string()));
        }
        Ok(Point::Set(items))
    }

    /// Multiset from a list of elements with repetitions.
    pub fn bag(mut items: Vec<Point>) -> Point {
        items.sort();
        let mut out: Vec<(Point, u32)> = Vec::new();
        for p in items {
            match out.last_mut() {
                Some((q, n)) if *q == p => *n += 1,
                _ => out.push((p, 1)),
            }
        }
        Point::Bag(out)
    }

    /// Strip one `L.` injection.
    pub fn unleft(&self) -> Option<&Point> {
        match self {
            Point::Left(p) => Some(p),
            _ => None,
        }
    }

    pub fn unright(&self) -> Option<&Point> {
        match self {
            Point::Right(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Atom(s) => f.write_str(s),
            Point::Left(p) => write!(f, "L.{p}"),
            Point::Right(p) => write!(f, "R.{p}"),
            Point::Pair(a, b) => write!(f, "({a},{b})"),
            Point::Set(items) => {
                f.write_str("{")?;
                for (i, p) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str("}")
            }
            Point::Bag(items) => {
                f.write_str("[")?;
                for (i, (p, n)) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}:{n}")?;
                }
                f.write_str("]")
            }
        }
    }
}

struct LabelParser<'a> {
    src: &'a str,
    pos: usize,
}

impl LabelParser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::InvalidLabel(
            self.src.into(),
            format!("{} at offset {}", msg.into(), self.pos),
        )
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(format!("expected {tok:?}")))
        }
    }

    fn point(&mut self) -> Result<Point> {
        if self.eat("L.") {
            return Ok(Point::left(self.point()?));
        }
        if self.eat("R.") {
            return Ok(Point::right(self.point()?));
        }
        if self.eat("(") {
            let a = self.point()?;
            self.expect(",")?;
            let b = self.point()?;
            self.expect(")")?;
            return Ok(Point::pair(a, b));
        }
        if self.eat("{") {
            let mut items = Vec::new();
            if !self.eat("}") {
                loop {
                    items.push(self.point()?);
                    if self.eat("}") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            return Point::set(items);
        }
        if self.eat("[") {
            let mut items = Vec::new();
            if !self.eat("]") {
                loop {
                    let p = self.point()?;
                    self.expect(":")?;
                    let start = self.pos;
                    while self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                        self.pos += 1;
                    }
                    let n: u32 = self.src[start..self.pos]
                        .parse()
                        .map_err(|_| self.err("expected multiplicity"))?;
                    if n == 0 {
                        return Err(self.err("zero multiplicity"));
                    }
                    items.extend(std::iter::repeat_n(p, n as usize));
                    if self.eat("]") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            return Ok(Point::bag(items));
        }
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| RESERVED.contains(&c) || c.is_whitespace())
            .unwrap_or(self.rest().len());
        self.pos += len;
        if len == 0 {
            return Err(self.err("expected a point"));
        }
        Point::atom(&self.src[start..self.pos])
    }
}

impl FromStr for Point {
    type Err = Error;
    fn from_str(s: &str) -> Result<Point> {
        let mut p = LabelParser { src: s, pos: 0 };
        let point = p.point()?;
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(point)
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite, canonically ordered set of points.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Carrier {
    points: Vec<Point>,
}

impl Carrier {
    pub fn new(mut points: Vec<Point>) -> Result<Carrier> {
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].to_string()));
        }
        Ok(Carrier { points })
    }

    /// Carrier of atoms with the given labels.
    pub fn atoms<S: AsRef<str>>(labels: &[S]) -> Result<Carrier> {
        Carrier::new(
            labels
                .iter()
                .map(|l| Point::atom(l.as_ref()))
                .collect::<Result<_>>()?,
        )
    }

    /// Carrier with points `prefix0 .. prefix{n-1}`.
    pub fn numbered(prefix: &str, n: usize) -> Carrier {
        Carrier::new(
            (0..n)
                .map(|i| Point::Atom(format!("{prefix}{i}")))
                .collect(),
        )
        .expect("distinct labels")
    }

    pub fn empty() -> Carrier {
        Carrier { points: Vec::new() }
    }

    /// The one-point carrier underlying the tensor unit.
    pub fn unit() -> Carrier {
        Carrier {
            points: vec![Point::Atom("*".into())],
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index_of(p).is_some()
    }

    /// Cartesian product; the index of `(i, j)` is `i * other.len() + j`.
    pub fn product(&self, other: &Carrier) -> Carrier {
        let mut points = Vec::with_capacity(self.len() * other.len());
        for a in &self.points {
            for b in &other.points {
                points.push(Point::pair(a.clone(), b.clone()));
            }
        }
        Carrier { points }
    }

    /// Disjoint union; left points keep their index, right points are
    /// shifted by `self.len()`.
    pub fn sum(&self, other: &Carrier) -> Carrier {
        let points = self
            .points
            .iter()
            .map(|p| Point::left(p.clone()))
            .chain(other.points.iter().map(|p| Point::right(p.clone())))
            .collect();
        Carrier { points }
    }

    /// Sub-carrier; errors when some point is missing.
    pub fn subset(&self, points: &[Point], side: &'static str) -> Result<Carrier> {
        for p in points {
            if !self.contains(p) {
                return Err(Error::DanglingPoint(p.to_string(), side));
            }
        }
        Carrier::new(points.to_vec())
    }

    pub fn map(&self, f: impl Fn(&Point) -> Point) -> Result<Carrier> {
        Carrier::new(self.points.iter().map(f).collect())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(">")
    }
}

impl Serialize for Carrier {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.points.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Carrier {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let points = Vec::<Point>::deserialize(d)?;
        Carrier::new(points).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for label in [
            "x",
            "L.x",
            "R.(a,L.b)",
            "{1,2}",
            "{}",
            "[x:2,y:1]",
            "[]",
            "(L.{a,b},[c:3])",
        ] {
            let p: Point = label.parse().unwrap();
            assert_eq!(p.to_string(), label);
        }
    }

    #[test]
    fn reserved_characters_are_rejected() {
        assert!(Point::atom("a.b").is_err());
        assert!(Point::atom("a b").is_err());
        assert!(Point::atom("").is_err());
        assert!("{1,1}".parse::<Point>().is_err());
        assert!("(a,b".parse::<Point>().is_err());
    }

    #[test]
    fn carriers_are_canonical() {
        let c = Carrier::atoms(&["b", "a", "c"]).unwrap();
        assert_eq!(c.points()[0], Point::atom("a").unwrap());
        assert!(Carrier::atoms(&["a", "a"]).is_err());
        let s = c.sum(&Carrier::atoms(&["a"]).unwrap());
        assert_eq!(s.len(), 4);
        assert_eq!(s.get(3), &Point::right(Point::atom("a").unwrap()));
        let p = c.product(&c);
        assert_eq!(p.get(3 + 2).to_string(), "(b,c)");
        assert_eq!(Carrier::new(p.points().to_vec()).unwrap(), p);
    }
}
