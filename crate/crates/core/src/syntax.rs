//! Formulas of the positive (modal) language, consequence pairs, a text
//! parser/printer and Sahlqvist-shape classification.
//!
//! Grammar, loosest to tightest:
//!
//! ```text
//! pair    := formula "<=" formula
//! formula := conj ("|" conj)*
//! conj    := unary ("&" unary)*
//! unary   := "box" unary | "dia" unary | atom
//! atom    := "top" | "bot" | ident | "(" formula ")"
//! ```

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Prop(String),
    Top,
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Dia(Box<Formula>),
}

impl Formula {
    pub fn prop(name: &str) -> Formula {
        Formula::Prop(name.to_string())
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Box::new(a))
    }

    pub fn diamond(a: Formula) -> Formula {
        Formula::Dia(Box::new(a))
    }

    /// Whether the formula mentions no modality.
    pub fn is_positive(&self) -> bool {
        match self {
            Formula::Prop(_) | Formula::Top | Formula::Bot => true,
            Formula::And(a, b) | Formula::Or(a, b) => a.is_positive() && b.is_positive(),
            Formula::Box(_) | Formula::Dia(_) => false,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::Top | Formula::Bot => 0,
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Box(a) | Formula::Dia(a) => 1 + a.depth(),
        }
    }

    /// Proposition letters, sorted.
    pub fn letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Prop(p) => {
                out.insert(p.clone());
            }
            Formula::Top | Formula::Bot => {}
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
            Formula::Box(a) | Formula::Dia(a) => a.collect_letters(out),
        }
    }

    /// Replaces letters for which `f` returns a formula.
    pub fn substitute(&self, f: &dyn Fn(&str) -> Option<Formula>) -> Formula {
        match self {
            Formula::Prop(p) => f(p).unwrap_or_else(|| self.clone()),
            Formula::Top | Formula::Bot => self.clone(),
            Formula::And(a, b) => Formula::and(a.substitute(f), b.substitute(f)),
            Formula::Or(a, b) => Formula::or(a.substitute(f), b.substitute(f)),
            Formula::Box(a) => Formula::boxed(a.substitute(f)),
            Formula::Dia(a) => Formula::diamond(a.substitute(f)),
        }
    }

    /// S-expression dump, e.g. `(and p (or q r))`.
    pub fn sexpr(&self) -> String {
        match self {
            Formula::Prop(p) => p.clone(),
            Formula::Top => "top".into(),
            Formula::Bot => "bot".into(),
            Formula::And(a, b) => format!("(and {} {})", a.sexpr(), b.sexpr()),
            Formula::Or(a, b) => format!("(or {} {})", a.sexpr(), b.sexpr()),
            Formula::Box(a) => format!("(box {})", a.sexpr()),
            Formula::Dia(a) => format!("(dia {})", a.sexpr()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Box(_) | Formula::Dia(_) => 3,
            _ => 4,
        }
    }

    fn render_into(&self, min_prec: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = self.precedence() < min_prec;
        if paren {
            out.write_str("(")?;
        }
        match self {
            Formula::Prop(p) => out.write_str(p)?,
            Formula::Top => out.write_str("top")?,
            Formula::Bot => out.write_str("bot")?,
            Formula::And(a, b) => {
                a.render_into(2, out)?;
                out.write_str(" & ")?;
                b.render_into(3, out)?;
            }
            Formula::Or(a, b) => {
                a.render_into(1, out)?;
                out.write_str(" | ")?;
                b.render_into(2, out)?;
            }
            Formula::Box(a) => {
                out.write_str("box ")?;
                a.render_into(3, out)?;
            }
            Formula::Dia(a) => {
                out.write_str("dia ")?;
                a.render_into(3, out)?;
            }
        }
        if paren {
            out.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render_into(0, f)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

/// `lhs ⊴ rhs`, written `lhs <= rhs`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConsequencePair {
    pub lhs: Formula,
    pub rhs: Formula,
}

impl ConsequencePair {
    pub fn new(lhs: Formula, rhs: Formula) -> ConsequencePair {
        ConsequencePair { lhs, rhs }
    }

    pub fn is_positive(&self) -> bool {
        self.lhs.is_positive() && self.rhs.is_positive()
    }

    pub fn letters(&self) -> BTreeSet<String> {
        let mut l = self.lhs.letters();
        l.extend(self.rhs.letters());
        l
    }
}

impl fmt::Display for ConsequencePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for ConsequencePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {position}: expected {expected}")]
pub struct SyntaxError {
    pub position: usize,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Box,
    Dia,
    And,
    Or,
    LParen,
    RParen,
    Entails,
}

fn describe(t: Option<&Tok>) -> &'static str {
    match t {
        None => "end of input",
        Some(Tok::Ident(_)) => "identifier",
        Some(Tok::Top) => "`top`",
        Some(Tok::Bot) => "`bot`",
        Some(Tok::Box) => "`box`",
        Some(Tok::Dia) => "`dia`",
        Some(Tok::And) => "`&`",
        Some(Tok::Or) => "`|`",
        Some(Tok::LParen) => "`(`",
        Some(Tok::RParen) => "`)`",
        Some(Tok::Entails) => "`<=`",
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'&' => out.push((start, Tok::And)),
            b'|' => out.push((start, Tok::Or)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'<' if bytes.get(i + 1) == Some(&b'=') => {
                out.push((start, Tok::Entails));
                i += 1;
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                let word = &text[start..=i];
                out.push((
                    start,
                    match word {
                        "top" => Tok::Top,
                        "bot" => Tok::Bot,
                        "box" => Tok::Box,
                        "dia" => Tok::Dia,
                        _ => Tok::Ident(word.to_string()),
                    },
                ));
            }
            _ => {
                return Err(SyntaxError {
                    position: start,
                    expected: "a formula token".into(),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn fail<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            position: self.offset(),
            expected: format!("{expected}, found {}", describe(self.peek())),
        })
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.conj()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            acc = Formula::or(acc, self.conj()?);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(Tok::Box) => {
                self.pos += 1;
                Ok(Formula::boxed(self.unary()?))
            }
            Some(Tok::Dia) => {
                self.pos += 1;
                Ok(Formula::diamond(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, SyntaxError> {
        let f = match self.peek() {
            Some(Tok::Top) => Formula::Top,
            Some(Tok::Bot) => Formula::Bot,
            Some(Tok::Ident(name)) => Formula::Prop(name.clone()),
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.fail("`)`");
                }
                inner
            }
            _ => return self.fail("a letter, `top`, `bot`, `box`, `dia` or `(`"),
        };
        self.pos += 1;
        Ok(f)
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => self.fail("end of input"),
        }
    }
}

fn parser(text: &str) -> Result<Parser, SyntaxError> {
    Ok(Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
    })
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut p = parser(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_pair(text: &str) -> Result<ConsequencePair, SyntaxError> {
    let mut p = parser(text)?;
    let lhs = p.formula()?;
    if p.peek() != Some(&Tok::Entails) {
        return p.fail("`<=`");
    }
    p.pos += 1;
    let rhs = p.formula()?;
    p.finish()?;
    Ok(ConsequencePair { lhs, rhs })
}

pub fn render_formula(f: &Formula) -> String {
    f.to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntecedentTag {
    PositiveAny,
    SahlqvistAntecedent,
    NotSahlqvist,
}

/// Shape of an antecedent, with its boxed atoms `□ⁿp` listed left to right
/// as `(p, n)` (empty for [`AntecedentTag::NotSahlqvist`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntecedentClass {
    pub tag: AntecedentTag,
    pub boxed_atoms: Vec<(String, usize)>,
}

/// `Some((p, n))` when `f = □ⁿp`.
pub fn as_boxed_atom(f: &Formula) -> Option<(&str, usize)> {
    match f {
        Formula::Prop(p) => Some((p, 0)),
        Formula::Box(a) => as_boxed_atom(a).map(|(p, n)| (p, n + 1)),
        _ => None,
    }
}

fn sahlqvist_atoms(f: &Formula, out: &mut Vec<(String, usize)>) -> bool {
    if let Some((p, n)) = as_boxed_atom(f) {
        out.push((p.to_string(), n));
        return true;
    }
    match f {
        Formula::Top | Formula::Bot => true,
        Formula::And(a, b) | Formula::Or(a, b) => sahlqvist_atoms(a, out) && sahlqvist_atoms(b, out),
        Formula::Dia(a) => sahlqvist_atoms(a, out),
        Formula::Box(_) | Formula::Prop(_) => false,
    }
}

pub fn classify_antecedent(f: &Formula) -> AntecedentClass {
    let mut atoms = Vec::new();
    let ok = sahlqvist_atoms(f, &mut atoms);
    let tag = if f.is_positive() {
        AntecedentTag::PositiveAny
    } else if ok {
        AntecedentTag::SahlqvistAntecedent
    } else {
        atoms.clear();
        AntecedentTag::NotSahlqvist
    };
    AntecedentClass { tag, boxed_atoms: atoms }
}

#[cfg(test)]
pub(crate) mod strategies {
    use super::*;
    use proptest::prelude::*;

    pub const LETTERS: [&str; 4] = ["p", "q", "r", "s"];

    pub fn formula(depth: u32, letters: usize, modal: bool) -> BoxedStrategy<Formula> {
        let leaf = prop_oneof![
            4 => (0..letters).prop_map(|i| Formula::prop(LETTERS[i])),
            1 => Just(Formula::Top),
            1 => Just(Formula::Bot),
        ];
        leaf.prop_recursive(depth, 64, 2, move |inner| {
            if modal {
                prop_oneof![
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                    inner.clone().prop_map(Formula::boxed),
                    inner.prop_map(Formula::diamond),
                ]
                .boxed()
            } else {
                prop_oneof![
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                    (inner.clone(), inner).prop_map(|(a, b)| Formula::or(a, b)),
                ]
                .boxed()
            }
        })
        .boxed()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            p("p & (q | r)"),
            Formula::and(Formula::prop("p"), Formula::or(Formula::prop("q"), Formula::prop("r")))
        );
        assert_eq!(p("box box p"), Formula::boxed(Formula::boxed(Formula::prop("p"))));
        assert_eq!(as_boxed_atom(&p("box box p")), Some(("p", 2)));
        let err = parse_formula("p & |").unwrap_err();
        assert_eq!(err.position, 4);
        assert!(parse_formula("p q").is_err());
        assert!(parse_formula("(p").is_err());
        assert!(parse_formula("p # q").is_err());
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(p("dia p | dia q"), Formula::or(p("dia p"), p("dia q")));
        assert_eq!(p("box p & q"), Formula::and(p("box p"), p("q")));
        assert_eq!(p("a | b | c"), Formula::or(p("a | b"), p("c")));
        assert_eq!(p("p_1 & Q2"), Formula::and(Formula::prop("p_1"), Formula::prop("Q2")));
    }

    #[test]
    fn render_examples() {
        assert_eq!(p("p & (q | r)").to_string(), "p & (q | r)");
        assert_eq!(Formula::diamond(Formula::Top).to_string(), "dia top");
        assert_eq!(p("(p&q)|(p&r)").to_string(), "p & q | p & r");
        assert_eq!(p("box (p & q)").to_string(), "box (p & q)");
        assert_eq!(p("p & (q & r)").to_string(), "p & (q & r)");
        assert_eq!(p("(p & q) & r").to_string(), "p & q & r");
        assert_eq!(p("dia dia (p)").to_string(), "dia dia p");
    }

    #[test]
    fn pair_parsing() {
        let pair = parse_pair("p & (q|r) <= (p&q)|(p&r)").unwrap();
        assert_eq!(pair.to_string(), "p & (q | r) <= p & q | p & r");
        assert!(parse_pair("p").is_err());
        assert!(parse_pair("p <= q <= r").is_err());
        assert_eq!(pair.letters().into_iter().collect::<Vec<_>>(), ["p", "q", "r"]);
    }

    #[test]
    fn sexpr_dump() {
        assert_eq!(p("p & (q | dia top)").sexpr(), "(and p (or q (dia top)))");
    }

    #[test]
    fn classify_examples() {
        let c = classify_antecedent(&p("p & (q | q2)"));
        assert_eq!(c.tag, AntecedentTag::PositiveAny);
        let c = classify_antecedent(&p("dia(box p & q)"));
        assert_eq!(c.tag, AntecedentTag::SahlqvistAntecedent);
        assert_eq!(c.boxed_atoms, vec![("p".to_string(), 1), ("q".to_string(), 0)]);
        let c = classify_antecedent(&p("box dia p"));
        assert_eq!(c.tag, AntecedentTag::NotSahlqvist);
        assert!(c.boxed_atoms.is_empty());
        assert_eq!(classify_antecedent(&p("box top")).tag, AntecedentTag::NotSahlqvist);
        assert_eq!(classify_antecedent(&p("dia bot | box box q")).tag, AntecedentTag::SahlqvistAntecedent);
    }

    fn reassociate(f: &Formula) -> Formula {
        match f {
            Formula::And(a, b) => match (**a).clone() {
                Formula::And(x, y) => Formula::and(reassociate(&x), Formula::and(reassociate(&y), reassociate(b))),
                a => Formula::and(reassociate(&a), reassociate(b)),
            },
            Formula::Or(a, b) => match (**a).clone() {
                Formula::Or(x, y) => Formula::or(reassociate(&x), Formula::or(reassociate(&y), reassociate(b))),
                a => Formula::or(reassociate(&a), reassociate(b)),
            },
            Formula::Box(a) => Formula::boxed(reassociate(a)),
            Formula::Dia(a) => Formula::diamond(reassociate(a)),
            other => other.clone(),
        }
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(f in strategies::formula(6, 4, true)) {
            prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }

        #[test]
        fn classification_ignores_association(f in strategies::formula(5, 3, true)) {
            prop_assert_eq!(classify_antecedent(&reassociate(&f)), classify_antecedent(&f));
        }
    }
}
