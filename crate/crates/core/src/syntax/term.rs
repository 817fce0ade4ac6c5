use std::collections::BTreeSet;
use std::fmt;

/// The four binary connectives of the residuated-lattice language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    Meet,
    Join,
    Prod,
    Impl,
}

impl Connective {
    pub const ALL: [Connective; 4] = [
        Connective::Meet,
        Connective::Join,
        Connective::Prod,
        Connective::Impl,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Meet => "&",
            Connective::Join => "|",
            Connective::Prod => "*",
            Connective::Impl => "->",
        }
    }

    /// Binding strength used by the parser and the renderer; larger binds tighter.
    pub(crate) fn precedence(self) -> u8 {
        match self {
            Connective::Impl => 1,
            Connective::Join => 2,
            Connective::Meet => 3,
            Connective::Prod => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Bin(Connective, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn bin(op: Connective, lhs: Term, rhs: Term) -> Term {
        Term::Bin(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn meet(lhs: Term, rhs: Term) -> Term {
        Term::bin(Connective::Meet, lhs, rhs)
    }

    pub fn join(lhs: Term, rhs: Term) -> Term {
        Term::bin(Connective::Join, lhs, rhs)
    }

    pub fn prod(lhs: Term, rhs: Term) -> Term {
        Term::bin(Connective::Prod, lhs, rhs)
    }

    pub fn implies(lhs: Term, rhs: Term) -> Term {
        Term::bin(Connective::Impl, lhs, rhs)
    }

    /// `t -> 0`.
    pub fn neg(t: Term) -> Term {
        Term::implies(t, Term::Zero)
    }

    /// `(a -> b) & (b -> a)`.
    pub fn iff(a: Term, b: Term) -> Term {
        Term::meet(Term::implies(a.clone(), b.clone()), Term::implies(b, a))
    }

    /// Left-nested product of `k` copies of `t`; the empty product is `1`.
    pub fn power(t: Term, k: u32) -> Term {
        if k == 0 {
            return Term::One;
        }
        let mut acc = t.clone();
        for _ in 1..k {
            acc = Term::prod(acc, t.clone());
        }
        acc
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One => {}
            Term::Bin(_, l, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::One => 0,
            Term::Bin(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::One => 1,
            Term::Bin(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Whether every connective in the term is one of `allowed`, and the
    /// constant `1` occurs only if `allow_one`.
    pub fn uses_only(&self, allowed: &[Connective], allow_one: bool) -> bool {
        match self {
            Term::Var(_) | Term::Zero => true,
            Term::One => allow_one,
            Term::Bin(op, l, r) => {
                allowed.contains(op) && l.uses_only(allowed, allow_one) && r.uses_only(allowed, allow_one)
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Bin(op, _, _) => op.precedence(),
            _ => u8::MAX,
        }
    }

    /// Canonical ASCII rendering with the fewest parentheses that still
    /// parse back to the same tree.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }

    fn render_into(&self, out: &mut String) {
        match self {
            Term::Var(v) => out.push_str(v),
            Term::Zero => out.push('0'),
            Term::One => out.push('1'),
            Term::Bin(op, l, r) => {
                let level = op.precedence();
                // `->` associates to the right, everything else to the left.
                let (wrap_left, wrap_right) = if *op == Connective::Impl {
                    (l.precedence() <= level, r.precedence() < level)
                } else {
                    (l.precedence() < level, r.precedence() <= level)
                };
                render_child(l, wrap_left, out);
                out.push(' ');
                out.push_str(op.symbol());
                out.push(' ');
                render_child(r, wrap_right, out);
            }
        }
    }
}

fn render_child(t: &Term, wrap: bool, out: &mut String) {
    if wrap {
        out.push('(');
        t.render_into(out);
        out.push(')');
    } else {
        t.render_into(out);
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Equal,
    LessEq,
}

/// `lhs = rhs` or `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
    pub relation: Relation,
}

impl Equation {
    pub fn equal(lhs: Term, rhs: Term) -> Self {
        Equation {
            lhs,
            rhs,
            relation: Relation::Equal,
        }
    }

    pub fn less_eq(lhs: Term, rhs: Term) -> Self {
        Equation {
            lhs,
            rhs,
            relation: Relation::LessEq,
        }
    }

    /// `t = 1`.
    pub fn is_top(t: Term) -> Self {
        Equation::equal(t, Term::One)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut vars = self.lhs.variables();
        vars.extend(self.rhs.variables());
        vars
    }

    /// A single formula that evaluates to `1` exactly when the equation holds.
    pub fn as_formula(&self) -> Term {
        match (self.relation, &self.rhs) {
            (Relation::Equal, Term::One) => self.lhs.clone(),
            (Relation::Equal, _) => Term::iff(self.lhs.clone(), self.rhs.clone()),
            (Relation::LessEq, _) => Term::implies(self.lhs.clone(), self.rhs.clone()),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Equal => "=",
            Relation::LessEq => "<=",
        };
        write!(f, "{} {} {}", self.lhs, rel, self.rhs)
    }
}

/// `premises |- conclusion`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub premises: Vec<Term>,
    pub conclusion: Term,
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let premises: Vec<String> = self.premises.iter().map(Term::render).collect();
        if premises.is_empty() {
            write!(f, "|- {}", self.conclusion)
        } else {
            write!(f, "{} |- {}", premises.join(", "), self.conclusion)
        }
    }
}

/// One line of a formula file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Formula(Term),
    Equation(Equation),
    Sequent(Sequent),
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Formula(t) => t.fmt(f),
            Statement::Equation(e) => e.fmt(f),
            Statement::Sequent(s) => s.fmt(f),
        }
    }
}

macro_rules! serialize_as_text {
    ($($t:ty),*) => {$(
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
    )*};
}

serialize_as_text!(Term, Equation, Sequent, Statement);
