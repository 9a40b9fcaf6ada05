use std::fmt;
use std::str::FromStr;

use crate::bigraph::BiGraph;

use super::ExtendError;

/// A class of `(m,n,e+)` graphs: parts `m` and `n`, at least `e_min` edges,
/// no `K_{s,s}` (if `s` is set) and no `K_{t,t}` in the complement (if `t` is set).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassSpec {
    pub m: usize,
    pub n: usize,
    pub e_min: usize,
    pub s: Option<usize>,
    pub t: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at position {position}: {message}")]
pub struct SpecError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl ClassSpec {
    pub fn new(m: usize, n: usize, e_min: usize, s: Option<usize>, t: Option<usize>) -> Result<Self, ExtendError> {
        let spec = ClassSpec { m, n, e_min, s, t };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), ExtendError> {
        if self.e_min > self.m * self.n {
            return Err(ExtendError::Infeasible { e_min: self.e_min, max: self.m * self.n });
        }
        if self.t.is_some() && self.s.is_none() {
            return Err(ExtendError::Spec(SpecError { position: 0, message: "t given without s".into() }));
        }
        if self.s == Some(0) || self.t == Some(0) {
            return Err(ExtendError::Spec(SpecError {
                position: 0,
                message: "biclique order must be positive".into(),
            }));
        }
        Ok(())
    }

    /// Same constraints on different part sizes and threshold.
    pub fn with_size(&self, m: usize, n: usize, e_min: usize) -> ClassSpec {
        ClassSpec { m, n, e_min, ..*self }
    }

    /// The class of reflected graphs.
    pub fn reflected(&self) -> ClassSpec {
        ClassSpec { m: self.n, n: self.m, ..*self }
    }

    /// Whether `g` belongs to the class.
    pub fn contains(&self, g: &BiGraph) -> bool {
        g.m() == self.m
            && g.n() == self.n
            && g.edge_count() >= self.e_min
            && self.s.is_none_or(|s| !g.contains_biclique(s, s))
            && self.t.is_none_or(|t| !g.complement().contains_biclique(t, t))
    }

    /// Constraint tag used in checkpoint file names, e.g. `s5t2`.
    pub fn constraint_tag(&self) -> String {
        match (self.s, self.t) {
            (None, _) => "free".to_string(),
            (Some(s), None) => format!("s{s}"),
            (Some(s), Some(t)) => format!("s{s}t{t}"),
        }
    }

    /// `<m>x<n>_e<e_min>_<constraints>.gs`
    pub fn file_name(&self) -> String {
        format!("{}x{}_e{}_{}.gs", self.m, self.n, self.e_min, self.constraint_tag())
    }
}

/// `member_check`: whether `g` is a graph of class `spec`.
pub fn member_check(g: &BiGraph, spec: &ClassSpec) -> bool {
    spec.contains(g)
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}+)", self.m, self.n, self.e_min)?;
        match (self.s, self.t) {
            (Some(s), Some(t)) => write!(f, "_{{{s},{t}}}"),
            (Some(s), None) => write!(f, "_{{{s}}}"),
            _ => Ok(()),
        }
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SpecError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn number(&mut self) -> Result<usize, SpecError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a number");
        }
        let v = rest[..len].parse().or_else(|_| self.err("number too large"))?;
        self.pos += len;
        Ok(v)
    }
}

impl FromStr for ClassSpec {
    type Err = ExtendError;

    /// Grammar: `(m,n,e+)` optionally followed by `_{s}`, `_{s,t}` or `_s`.
    fn from_str(text: &str) -> Result<Self, ExtendError> {
        let mut c = Cursor { text, pos: 0 };
        let parsed = (|| -> Result<ClassSpec, SpecError> {
            c.expect('(')?;
            let m = c.number()?;
            c.expect(',')?;
            let n = c.number()?;
            c.expect(',')?;
            let e_min = c.number()?;
            c.eat('+');
            c.expect(')')?;
            let (mut s, mut t) = (None, None);
            if c.eat('_') {
                if c.eat('{') {
                    s = Some(c.number()?);
                    if c.eat(',') {
                        t = Some(c.number()?);
                    }
                    c.expect('}')?;
                } else {
                    s = Some(c.number()?);
                }
            }
            c.skip_ws();
            if c.pos != text.len() {
                return c.err("unexpected trailing input");
            }
            if m == 0 || n == 0 {
                return Err(SpecError { position: 1, message: "part sizes must be positive".into() });
            }
            Ok(ClassSpec { m, n, e_min, s, t })
        })()
        .map_err(ExtendError::Spec)?;
        parsed.validate()?;
        Ok(parsed)
    }
}

/// `parse_spec`: parses `(m,n,e+)[_{s[,t]}]`.
pub fn parse_spec(text: &str) -> Result<ClassSpec, ExtendError> {
    text.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_class_notation() {
        let s = parse_spec("(7,7,42+)_{5,2}").unwrap();
        assert_eq!((s.m, s.n, s.e_min, s.s, s.t), (7, 7, 42, Some(5), Some(2)));
        let s = parse_spec("(4,5,12+)_{2}").unwrap();
        assert_eq!((s.s, s.t), (Some(2), None));
        assert_eq!(parse_spec("(4,5,12+)_2").unwrap(), s);
        let s = parse_spec("(3,3,0+)").unwrap();
        assert_eq!((s.s, s.t), (None, None));
        assert_eq!(parse_spec(" ( 16, 16, 189+ )_{5, 2} ").unwrap().to_string(), "(16,16,189+)_{5,2}");
    }

    #[test]
    fn reports_positions() {
        match parse_spec("(7,x,3+)") {
            Err(ExtendError::Spec(e)) => assert_eq!(e.position, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_spec("(2,2,5+)").is_err());
        assert!(parse_spec("(2,2,1+)_{2} extra").is_err());
        assert!(parse_spec("(0,2,0+)").is_err());
        assert!(parse_spec("(2,2,0+)_{0}").is_err());
    }

    #[test]
    fn membership() {
        let k22 = BiGraph::complete(2, 2);
        assert!(!member_check(&k22, &parse_spec("(2,2,4+)_{2}").unwrap()));
        assert!(member_check(&k22, &parse_spec("(2,2,4+)").unwrap()));
        assert!(!member_check(&BiGraph::new(2, 2), &parse_spec("(2,2,0+)_{2,2}").unwrap()));
        assert!(!member_check(&BiGraph::new(2, 3), &parse_spec("(2,2,0+)").unwrap()));
    }

    #[test]
    fn file_names() {
        assert_eq!(parse_spec("(7,7,42+)_{5,2}").unwrap().file_name(), "7x7_e42_s5t2.gs");
        assert_eq!(parse_spec("(3,4,1+)").unwrap().file_name(), "3x4_e1_free.gs");
    }
}
