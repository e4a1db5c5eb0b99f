//! Expression AST and the canonical printer.
//!
//! `print` emits text that reparses to a structurally identical tree:
//! right operands of binary nodes print one precedence level tighter, so
//! associativity is preserved literally, and variables print canonically as
//! `x<i>`.

use num_bigint::BigUint;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Indeterminate with 1-based index.
    Var(usize),
    /// Nonnegative integer literal, evaluated as scalar * identity.
    Num(BigUint),
    /// Named constant resolved from the substitution's environment.
    Const(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    /// Multiplicative inverse; the `^-1` form.
    Inv(Box<Expr>),
    /// Integer power. Exponent -1 normalizes to `Inv`; exponent 0 is the
    /// identity matrix.
    Pow(Box<Expr>, i64),
    /// Builtin g_n node: `gn<k>(x; y1, ..., yk)`. Kept as a node because the
    /// expanded form has (n+1)! terms.
    Gn { n: usize, x: Box<Expr>, ys: Vec<Expr> },
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        assert!(i >= 1, "variable indices are 1-based");
        Expr::Var(i)
    }

    pub fn num(v: u64) -> Expr {
        Expr::Num(BigUint::from(v))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn inv(a: Expr) -> Expr {
        Expr::Inv(Box::new(a))
    }

    /// Normalizing constructor: `^-1` becomes `Inv`, matching the parser.
    pub fn pow(a: Expr, k: i64) -> Expr {
        if k == -1 {
            Expr::inv(a)
        } else {
            Expr::Pow(Box::new(a), k)
        }
    }

    pub fn gn(n: usize, x: Expr, ys: Vec<Expr>) -> Expr {
        assert_eq!(ys.len(), n, "gn{n} takes exactly {n} y-arguments");
        Expr::Gn {
            n,
            x: Box::new(x),
            ys,
        }
    }

    /// All variable indices appearing in the expression.
    pub fn var_indices(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.walk(&mut |e| {
            if let Expr::Var(i) = e {
                out.insert(*i);
            }
        });
        out
    }

    /// Largest variable index (0 when there are none).
    pub fn max_var_index(&self) -> usize {
        self.var_indices().into_iter().max().unwrap_or(0)
    }

    /// Named constants appearing in the expression.
    pub fn const_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |e| {
            if let Expr::Const(name) = e {
                out.insert(name.clone());
            }
        });
        out
    }

    fn walk(&self, visit: &mut impl FnMut(&Expr)) {
        visit(self);
        match self {
            Expr::Var(_) | Expr::Num(_) | Expr::Const(_) => {}
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
            Expr::Neg(a) | Expr::Inv(a) | Expr::Pow(a, _) => a.walk(visit),
            Expr::Gn { x, ys, .. } => {
                x.walk(visit);
                for y in ys {
                    y.walk(visit);
                }
            }
        }
    }

    /// Child expression by position, used for non-permissible paths.
    pub fn child(&self, index: usize) -> Option<&Expr> {
        match self {
            Expr::Var(_) | Expr::Num(_) | Expr::Const(_) => None,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => match index {
                0 => Some(a),
                1 => Some(b),
                _ => None,
            },
            Expr::Neg(a) | Expr::Inv(a) | Expr::Pow(a, _) => (index == 0).then_some(&**a),
            Expr::Gn { x, ys, .. } => {
                if index == 0 {
                    Some(x)
                } else {
                    ys.get(index - 1)
                }
            }
        }
    }

    /// Subexpression at a child-index path from this node.
    pub fn at_path(&self, path: &[usize]) -> Option<&Expr> {
        let mut cur = self;
        for &i in path {
            cur = cur.child(i)?;
        }
        Some(cur)
    }
}

// Precedence levels: 0 sums, 1 products, 2 prefix/postfix, 3 atoms.
fn write_expr(e: &Expr, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let own = match e {
        Expr::Add(..) | Expr::Sub(..) => 0,
        Expr::Mul(..) => 1,
        Expr::Neg(..) | Expr::Inv(..) | Expr::Pow(..) => 2,
        Expr::Var(_) | Expr::Num(_) | Expr::Const(_) | Expr::Gn { .. } => 3,
    };
    let parens = own < level;
    if parens {
        write!(f, "(")?;
    }
    match e {
        Expr::Var(i) => write!(f, "x{i}")?,
        Expr::Num(v) => write!(f, "{v}")?,
        Expr::Const(name) => write!(f, "{name}")?,
        Expr::Add(a, b) => {
            write_expr(a, 0, f)?;
            write!(f, " + ")?;
            write_expr(b, 1, f)?;
        }
        Expr::Sub(a, b) => {
            write_expr(a, 0, f)?;
            write!(f, " - ")?;
            write_expr(b, 1, f)?;
        }
        Expr::Mul(a, b) => {
            write_expr(a, 1, f)?;
            write!(f, "*")?;
            write_expr(b, 2, f)?;
        }
        Expr::Neg(a) => {
            write!(f, "-")?;
            write_expr(a, 2, f)?;
        }
        Expr::Inv(a) => {
            write_expr(a, 3, f)?;
            write!(f, "^-1")?;
        }
        Expr::Pow(a, k) => {
            write_expr(a, 3, f)?;
            write!(f, "^{k}")?;
        }
        Expr::Gn { n, x, ys } => {
            write!(f, "gn{n}(")?;
            write_expr(x, 0, f)?;
            write!(f, "; ")?;
            for (i, y) in ys.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write_expr(y, 0, f)?;
            }
            write!(f, ")")?;
        }
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(self, 0, f)
    }
}
