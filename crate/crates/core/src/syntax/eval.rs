use std::collections::BTreeMap;

use crate::algebra::{Elem, FiniteResiduatedLattice};
use crate::error::{Error, Result};
use crate::syntax::term::{Connective, Term};

/// Variable assignment into a finite algebra.
pub type Assignment = BTreeMap<String, Elem>;

/// Evaluates `t` under `assignment`: variables are looked up, `0` and `1`
/// go to bottom and top, connectives go through the tables.
pub fn evaluate_term(
    a: &FiniteResiduatedLattice,
    assignment: &Assignment,
    t: &Term,
) -> Result<Elem> {
    Ok(match t {
        Term::Var(v) => {
            let e = *assignment
                .get(v)
                .ok_or_else(|| Error::UnassignedVariable(v.clone()))?;
            if e >= a.size() {
                return Err(Error::format(format!(
                    "variable {v} assigned {e}, outside 0..{}",
                    a.size()
                )));
            }
            e
        }
        Term::Zero => a.bottom(),
        Term::One => a.top(),
        Term::Bin(op, l, r) => {
            let x = evaluate_term(a, assignment, l)?;
            let y = evaluate_term(a, assignment, r)?;
            a.op(*op, x, y)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Instr {
    Var(usize),
    Zero,
    One,
    Op(Connective),
}

/// A term flattened to postfix form over a fixed variable order, for the
/// exhaustive loops.
#[derive(Clone, Debug)]
pub struct CompiledTerm {
    program: Vec<Instr>,
}

impl CompiledTerm {
    /// Every variable of `t` must appear in `variables`; its position there
    /// is its slot in the assignment slice passed to [`eval`](Self::eval).
    pub fn new(t: &Term, variables: &[String]) -> Result<Self> {
        let mut program = Vec::with_capacity(t.size());
        compile(t, variables, &mut program)?;
        Ok(CompiledTerm { program })
    }

    pub fn eval(&self, a: &FiniteResiduatedLattice, slots: &[Elem], stack: &mut Vec<Elem>) -> Elem {
        stack.clear();
        for ins in &self.program {
            let v = match *ins {
                Instr::Var(i) => slots[i],
                Instr::Zero => a.bottom(),
                Instr::One => a.top(),
                Instr::Op(op) => {
                    let y = stack.pop().expect("well-formed program");
                    let x = stack.pop().expect("well-formed program");
                    a.op(op, x, y)
                }
            };
            stack.push(v);
        }
        stack[0]
    }

    /// Runs the program over an arbitrary carrier.
    pub fn eval_with<V: Clone>(
        &self,
        slots: &[V],
        zero: &V,
        one: &V,
        mut op: impl FnMut(Connective, &V, &V) -> V,
    ) -> V {
        let mut stack: Vec<V> = Vec::new();
        for ins in &self.program {
            let v = match *ins {
                Instr::Var(i) => slots[i].clone(),
                Instr::Zero => zero.clone(),
                Instr::One => one.clone(),
                Instr::Op(c) => {
                    let y = stack.pop().expect("well-formed program");
                    let x = stack.pop().expect("well-formed program");
                    op(c, &x, &y)
                }
            };
            stack.push(v);
        }
        stack.pop().expect("well-formed program")
    }
}

fn compile(t: &Term, variables: &[String], out: &mut Vec<Instr>) -> Result<()> {
    match t {
        Term::Var(v) => {
            let i = variables
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| Error::UnassignedVariable(v.clone()))?;
            out.push(Instr::Var(i));
        }
        Term::Zero => out.push(Instr::Zero),
        Term::One => out.push(Instr::One),
        Term::Bin(op, l, r) => {
            compile(l, variables, out)?;
            compile(r, variables, out)?;
            out.push(Instr::Op(*op));
        }
    }
    Ok(())
}

/// Odometer over `0..radix` tuples of length `len`, last position fastest.
pub(crate) struct Odometer {
    digits: Vec<usize>,
    radix: usize,
    started: bool,
}

impl Odometer {
    pub(crate) fn new(len: usize, radix: usize) -> Self {
        Odometer {
            digits: vec![0; len],
            radix,
            started: false,
        }
    }

    /// Advances and returns the current tuple, or `None` when exhausted.
    pub(crate) fn next(&mut self) -> Option<&[usize]> {
        if !self.started {
            self.started = true;
            if self.radix == 0 && !self.digits.is_empty() {
                return None;
            }
            return Some(&self.digits);
        }
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.radix {
                return Some(&self.digits);
            }
            self.digits[i] = 0;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lukasiewicz_chain;
    use crate::syntax::parse;

    fn assign(pairs: &[(&str, Elem)]) -> Assignment {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn l3_square_of_half_is_zero() {
        let l3 = lukasiewicz_chain(3).unwrap();
        let t = parse("x*x").unwrap();
        assert_eq!(evaluate_term(&l3, &assign(&[("x", 1)]), &t).unwrap(), 0);
    }

    #[test]
    fn l3_half_implies_zero() {
        let l3 = lukasiewicz_chain(3).unwrap();
        let t = parse("x -> y").unwrap();
        assert_eq!(evaluate_term(&l3, &assign(&[("x", 1), ("y", 0)]), &t).unwrap(), 1);
    }

    #[test]
    fn one_implies_zero_is_bottom() {
        for k in 2..6 {
            let a = lukasiewicz_chain(k).unwrap();
            let t = parse("1 -> 0").unwrap();
            assert_eq!(evaluate_term(&a, &Assignment::new(), &t).unwrap(), a.bottom());
        }
    }

    #[test]
    fn unassigned_variable() {
        let l3 = lukasiewicz_chain(3).unwrap();
        let t = parse("x | z").unwrap();
        assert!(matches!(
            evaluate_term(&l3, &assign(&[("x", 1)]), &t),
            Err(Error::UnassignedVariable(v)) if v == "z"
        ));
    }

    #[test]
    fn compiled_matches_recursive() {
        let a = lukasiewicz_chain(4).unwrap();
        let t = parse("(x -> y) * (y | x & ~y) -> x^2").unwrap();
        let vars = vec!["x".to_string(), "y".to_string()];
        let c = CompiledTerm::new(&t, &vars).unwrap();
        let mut stack = Vec::new();
        for x in 0..4 {
            for y in 0..4 {
                let rec = evaluate_term(&a, &assign(&[("x", x), ("y", y)]), &t).unwrap();
                assert_eq!(c.eval(&a, &[x, y], &mut stack), rec);
            }
        }
    }

    #[test]
    fn odometer_order() {
        let mut o = Odometer::new(2, 2);
        let mut seen = Vec::new();
        while let Some(d) = o.next() {
            seen.push(d.to_vec());
        }
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let mut empty = Odometer::new(0, 3);
        assert_eq!(empty.next(), Some(&[][..]));
        assert_eq!(empty.next(), None);
    }
}
