//! JSON encodings of core values.
//!
//! Rationals are strings `"num/den"` (plain integers are accepted on
//! input), quadratic scalars are `{"d", "a", "b"}` objects, places are
//! `{"kind": "arch"}` or `{"kind": "finite", "p": p}`. The CLI works over
//! [`QuadScalar`], which encodes a rational value as a plain string.

use periodrel_core::gfun::{GFunMatrix, GaussManinCoefficients};
use periodrel_core::poly::Monomial;
use periodrel_core::relations::{EndomorphismAction, SyntheticPeriodData};
use periodrel_core::{Block, Embedding, Matrix, MultiPoly, Place, QuadScalar, Rational, Scalar, TruncatedSeries, VarId};
use serde_json::{json, Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("expected {expected} at {path}")]
    Shape { expected: &'static str, path: String },
    #[error("{0}")]
    Core(#[from] periodrel_core::Error),
}

pub type Result<T> = std::result::Result<T, FormatError>;

fn shape(expected: &'static str, path: &str) -> FormatError {
    FormatError::Shape { expected, path: path.to_string() }
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| FormatError::Shape { expected: "field", path: format!("{path}.{key}") })
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| shape("non-negative integer", path))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| shape("array", path))
}

/// Round-trip between a value and its JSON form.
pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value, path: &str) -> Result<Self>;
}

impl Json for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_fraction_string())
    }

    fn from_json(v: &Value, path: &str) -> Result<Self> {
        match v {
            Value::String(s) => Ok(s.parse()?),
            Value::Number(n) => n.as_i64().map(Rational::from).ok_or_else(|| shape("integer", path)),
            _ => Err(shape("rational string", path)),
        }
    }
}

impl Json for QuadScalar {
    fn to_json(&self) -> Value {
        match self.d() {
            None => self.a().to_json(),
            Some(d) => json!({ "d": d, "a": self.a().to_json(), "b": self.b().to_json() }),
        }
    }

    fn from_json(v: &Value, path: &str) -> Result<Self> {
        if v.is_object() {
            let d = field(v, "d", path)?.as_i64().ok_or_else(|| shape("integer d", path))?;
            let a = Rational::from_json(field(v, "a", path)?, path)?;
            let b = Rational::from_json(field(v, "b", path)?, path)?;
            Ok(QuadScalar::new(d, a, b)?)
        } else {
            Ok(QuadScalar::rational(Rational::from_json(v, path)?))
        }
    }
}

impl Json for Place {
    fn to_json(&self) -> Value {
        let mut m = Map::new();
        match self {
            Place::Archimedean { .. } => {
                m.insert("kind".into(), "arch".into());
            }
            Place::Finite { p, .. } => {
                m.insert("kind".into(), "finite".into());
                m.insert("p".into(), p.get().into());
            }
        }
        if let Some(e) = self.embedding_selector() {
            m.insert("embedding".into(), if e == Embedding::Sigma { "sigma" } else { "tau" }.into());
        }
        Value::Object(m)
    }

    fn from_json(v: &Value, path: &str) -> Result<Self> {
        let base = match field(v, "kind", path)?.as_str() {
            Some("arch") => Place::arch(),
            Some("finite") => Place::finite(field(v, "p", path)?.as_u64().ok_or_else(|| shape("prime", path))?)?,
            _ => return Err(shape("\"arch\" or \"finite\"", path)),
        };
        Ok(match v.get("embedding").and_then(Value::as_str) {
            Some("tau") => base.with_embedding(Embedding::Tau),
            Some("sigma") => base.with_embedding(Embedding::Sigma),
            _ => base,
        })
    }
}

/// `arch`, `arch:tau` or a prime `p` (optionally `p:tau`).
pub fn parse_place(s: &str) -> std::result::Result<Place, String> {
    let (head, emb) = match s.split_once(':') {
        Some((h, "sigma")) => (h, Some(Embedding::Sigma)),
        Some((h, "tau")) => (h, Some(Embedding::Tau)),
        Some(_) => return Err(format!("bad embedding in {s:?}")),
        None => (s, None),
    };
    let place = if head == "arch" {
        Place::arch()
    } else {
        let p: u64 = head.parse().map_err(|_| format!("bad place {s:?}"))?;
        Place::finite(p).map_err(|e| e.to_string())?
    };
    Ok(match emb {
        Some(e) => place.with_embedding(e),
        None => place,
    })
}

trait PlaceExt {
    fn embedding_selector(&self) -> Option<Embedding>;
}

impl PlaceExt for Place {
    fn embedding_selector(&self) -> Option<Embedding> {
        match self {
            Place::Archimedean { embedding } | Place::Finite { embedding, .. } => *embedding,
        }
    }
}

impl<S: Json + Scalar> Json for Matrix<S> {
    fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows()).map(|r| Value::Array(self.row(r).iter().map(Json::to_json).collect())).collect(),
        )
    }

    fn from_json(v: &Value, path: &str) -> Result<Self> {
        let rows = as_array(v, path)?
            .iter()
            .enumerate()
            .map(|(r, row)| {
                as_array(row, path)?
                    .iter()
                    .enumerate()
                    .map(|(c, x)| S::from_json(x, &format!("{path}[{r}][{c}]")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(rows)?)
    }
}

impl<S: Json + Scalar> Json for TruncatedSeries<S> {
    fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "coeffs": self.coeffs().iter().map(Json::to_json).collect::<Vec<_>>(),
            "integral": self.is_integral_asserted(),
        })
    }

    fn from_json(v: &Value, path: &str) -> Result<Self> {
        let mut coeffs = as_array(field(v, "coeffs", path)?, path)?
            .iter()
            .enumerate()
            .map(|(i, c)| S::from_json(c, &format!("{path}.coeffs[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(shape("at least one coefficient", path));
        }
        let order = match v.get("order") {
            Some(o) => as_usize(o, path)?,
            None => coeffs.len() - 1,
        };
        // A short list with an explicit order is a polynomial, padded with zeros.
        if order + 1 < coeffs.len() {
            return Err(shape("at most order + 1 coefficients", path));
        }
        coeffs.resize(order + 1, S::zero());
        let s = TruncatedSeries::new(coeffs);
        if v.get("integral").and_then(Value::as_bool) == Some(true) {
            Ok(s.assert_integral()?)
        } else {
            Ok(s)
        }
    }
}

fn var_to_json(v: VarId, e: u32) -> Value {
    let mut out = vec![json!(v.block.name()), json!(v.row), json!(v.col), json!(e)];
    if v.copy != 1 {
        out.push(json!(v.copy));
    }
    Value::Array(out)
}

fn var_from_json(v: &Value, path: &str) -> Result<(VarId, u32)> {
    let a = as_array(v, path)?;
    if a.len() != 4 && a.len() != 5 {
        return Err(shape("[block, i, j, exp] or [block, i, j, exp, copy]", path));
    }
    let block = a[0].as_str().and_then(Block::from_name).ok_or_else(|| shape("block name", path))?;
    let (i, j, e) = (as_usize(&a[1], path)?, as_usize(&a[2], path)?, as_usize(&a[3], path)?);
    if i == 0 || j == 0 {
        return Err(shape("1-based indices", path));
    }
    let mut var = VarId::new(block, i, j);
    if let Some(c) = a.get(4) {
        var = var.with_copy(u16::try_from(as_usize(c, path)?).map_err(|_| shape("small copy index", path))?);
    }
    Ok((var, e as u32))
}

impl<S: Json + Scalar> Json for MultiPoly<S> {
    /// Terms in descending monomial order.
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .rev()
                .map(|(m, c)| {
                    json!({
                        "coeff": c.to_json(),
                        "monomial": m.iter().map(|(v, e)| var_to_json(v, e)).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }

    fn from_json(v: &Value, path: &str) -> Result<Self> {
        let terms = as_array(v, path)?
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let p = format!("{path}[{k}]");
                let c = S::from_json(field(t, "coeff", &p)?, &p)?;
                let vars = as_array(field(t, "monomial", &p)?, &p)?
                    .iter()
                    .map(|x| var_from_json(x, &p))
                    .collect::<Result<Vec<_>>>()?;
                Ok((Monomial::from_pairs(vars), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiPoly::from_terms(terms))
    }
}

impl<S: Json + Scalar> Json for EndomorphismAction<S> {
    fn to_json(&self) -> Value {
        json!({ "g": self.g(), "A": self.a().to_json(), "B": self.b().to_json(), "D": self.d().to_json() })
    }

    fn from_json(v: &Value, path: &str) -> Result<Self> {
        let m = |k: &str| Matrix::<S>::from_json(field(v, k, path)?, &format!("{path}.{k}"));
        let act = EndomorphismAction::new(m("A")?, m("B")?, m("D")?)?;
        if let Some(g) = v.get("g") {
            if as_usize(g, path)? != act.g() {
                return Err(shape("g matching the matrix size", path));
            }
        }
        Ok(act)
    }
}

impl<S: Json + Scalar> Json for SyntheticPeriodData<S> {
    fn to_json(&self) -> Value {
        json!({
            "g": self.g,
            "M": self.m.to_json(),
            "F": self.f.to_json(),
            "G": self.gp.to_json(),
            "seed": self.seed,
            "singular_fallback": self.singular_fallback,
        })
    }

    fn from_json(v: &Value, path: &str) -> Result<Self> {
        let m = |k: &str| Matrix::<S>::from_json(field(v, k, path)?, &format!("{path}.{k}"));
        let f = m("F")?;
        let g = f.rows();
        let data = SyntheticPeriodData {
            g,
            m: match v.get("M") {
                Some(_) => m("M")?,
                None => Matrix::identity(g),
            },
            f,
            gp: m("G")?,
            seed: v.get("seed").and_then(Value::as_u64).unwrap_or(0),
            singular_fallback: v.get("singular_fallback").and_then(Value::as_bool).unwrap_or(false),
        };
        if [data.m.rows(), data.m.cols(), data.f.cols(), data.gp.rows(), data.gp.cols()].iter().any(|&n| n != g) {
            return Err(shape("g × g matrices M, F, G", path));
        }
        Ok(data)
    }
}

impl<S: Json + Scalar> Json for GFunMatrix<S> {
    fn to_json(&self) -> Value {
        let g = self.g();
        let rows: Vec<Value> = (1..=g)
            .map(|i| Value::Array((1..=g).map(|j| self.get(i, j).to_json()).collect()))
            .collect();
        json!({ "g": g, "order": self.order(), "entries": rows })
    }

    fn from_json(v: &Value, path: &str) -> Result<Self> {
        let rows = as_array(field(v, "entries", path)?, path)?;
        let g = rows.len();
        let mut entries = Vec::with_capacity(g * g);
        for (i, row) in rows.iter().enumerate() {
            let row = as_array(row, path)?;
            if row.len() != g {
                return Err(shape("square grid of series", path));
            }
            for (j, s) in row.iter().enumerate() {
                entries.push(TruncatedSeries::from_json(s, &format!("{path}.entries[{i}][{j}]"))?);
            }
        }
        Ok(GFunMatrix::new(g, entries)?)
    }
}

impl<S: Json + Scalar> Json for GaussManinCoefficients<S> {
    /// `a[i][k][ℓ]`, zero-based in the array, `k` running over `0..=N`.
    fn to_json(&self) -> Value {
        let (g, n) = (self.g(), self.n());
        let a: Vec<Value> = (1..=g)
            .map(|i| {
                Value::Array(
                    (0..=n)
                        .map(|k| Value::Array((1..=g).map(|l| self.get(i, k, l).to_json()).collect()))
                        .collect(),
                )
            })
            .collect();
        json!({ "g": g, "N": n, "a": a })
    }

    fn from_json(v: &Value, path: &str) -> Result<Self> {
        let outer = as_array(field(v, "a", path)?, path)?;
        let g = outer.len();
        let n = match outer.first() {
            Some(first) => as_array(first, path)?.len().checked_sub(1).ok_or_else(|| shape("N + 1 blocks", path))?,
            None => return Err(shape("g ≥ 1", path)),
        };
        let mut cells = Vec::new();
        for (i, by_k) in outer.iter().enumerate() {
            let by_k = as_array(by_k, path)?;
            if by_k.len() != n + 1 {
                return Err(shape("N + 1 derivative blocks per row", path));
            }
            for (k, by_l) in by_k.iter().enumerate() {
                let by_l = as_array(by_l, path)?;
                if by_l.len() != g {
                    return Err(shape("g series per block", path));
                }
                for (l, s) in by_l.iter().enumerate() {
                    cells.push(TruncatedSeries::from_json(s, &format!("{path}.a[{i}][{k}][{l}]"))?);
                }
            }
        }
        let mut it = cells.into_iter();
        Ok(GaussManinCoefficients::from_fn(g, n, |_, _, _| it.next().expect("cell count checked")))
    }
}

/// Parse a comma-separated list of scalars, e.g. `0,1,-1/2`.
pub fn parse_scalar_list(s: &str) -> std::result::Result<Vec<QuadScalar>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<Rational>().map(QuadScalar::rational).map_err(|e| e.to_string()))
        .collect()
}
