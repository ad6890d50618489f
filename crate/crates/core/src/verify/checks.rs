use crate::diagram::{Framing, SublinkMask};
use crate::error::EngineError;
use crate::kauffman::x_leading_of;
use crate::poly::{delta_p, BiLaurent, Degree, AX, VZ};
use crate::rational::{UniLaurent, UniLaurentRational};
use crate::satellite::{double_blackboard, whitehead_double};

use super::{Report, Status, Subject, Verifier};

fn vz(c: i64, e1: i32, e2: i32) -> BiLaurent {
    BiLaurent::from_terms(VZ, [(c, e1, e2)])
}

fn ax(c: i64, e1: i32, e2: i32) -> BiLaurent {
    BiLaurent::from_terms(AX, [(c, e1, e2)])
}

/// `p(a, x) ↦ p(v⁻², ±z²)`.
fn to_vz(p: &BiLaurent, negate_z: bool) -> Result<BiLaurent, EngineError> {
    let z2 = vz(if negate_z { -1 } else { 1 }, 0, 2);
    Ok(p.subst_monomial(&vz(1, -2, 0), &z2)?)
}

fn rational(terms: &[(i64, i32)]) -> UniLaurentRational {
    UniLaurentRational::from_poly(UniLaurent::from_terms(terms))
}

/// Records a degree; `None` (and an internal-error status) for zero.
fn top(r: &mut Report, key: &str, p: &BiLaurent, var: &str) -> Result<Option<i64>, EngineError> {
    let d = p.max_deg(var)?;
    r.degree(key, d);
    if d == Degree::NegInfinity {
        r.status = Status::InternalError;
        r.reason = Some(format!("zero_polynomial: {key}"));
        return Ok(None);
    }
    Ok(d.finite().map(i64::from))
}

fn congruence_part(entry: &str, name: &str, lhs: &BiLaurent, rhs: &BiLaurent) -> Report {
    let mut r = Report::new(entry, name);
    let residue = (lhs - rhs).mod2();
    r.pass_if(residue.is_zero());
    r.sides(lhs, rhs);
    r.residue = Some(residue.to_string());
    r
}

impl Verifier {
    /// The congruence `F(v⁻², z²) ≡ v^{4t}{K}` and its four reformulations
    /// through `U`, `L`, and the bracket against `L ⊕ 1` and `D ⊕ 1`.
    pub fn congruence(&self, s: &Subject) -> Result<Report, EngineError> {
        let d = &s.diagram;
        let bb = d.blackboard_framing();
        let l = self.kauffman.framed_kauffman(d)?;
        let f = self.kauffman.normalize_f(d)?;
        let u = self.kauffman.normalize_u(d)?;
        let rk = self.rudolph.rudolph_invariant(d)?;
        let rkf = self.rudolph.rudolph_framed(d, &bb)?;
        let bracket = self.rudolph.bracket(d, &bb)?;
        let mut l_sum = BiLaurent::zero(AX);
        let mut d_sum = BiLaurent::zero(AX);
        for m in SublinkMask::all(d.component_count()) {
            let sub = d.sublink(m)?;
            l_sum += &self.kauffman.framed_kauffman(&sub)?;
            d_sum += &self.kauffman.dubrovnik(&sub)?;
        }
        let t = d.total_linking();
        let parts = vec![
            congruence_part(&s.name, "theorem", &to_vz(&f, false)?, &(vz(1, 4 * t as i32, 0) * &rk)),
            congruence_part(&s.name, "unframed", &to_vz(&u, false)?, &rk),
            congruence_part(&s.name, "framed", &to_vz(&l, false)?, &rkf),
            congruence_part(&s.name, "bracket_kauffman", &bracket, &to_vz(&l_sum, false)?),
            congruence_part(&s.name, "bracket_dubrovnik", &bracket, &to_vz(&d_sum, true)?),
        ];
        let mut r = Report::new(&s.name, "congruence");
        r.count("total_linking", t);
        let passing = parts.iter().filter(|p| p.passed()).count();
        if passing == parts.len() {
            r.status = Status::Pass;
        } else if passing == 0 {
            r.status = Status::Fail;
        } else {
            r.status = Status::InternalError;
            r.reason = Some(format!("inconsistent_parts: {passing} of {} pass", parts.len()));
        }
        r.parts = parts;
        Ok(r)
    }

    /// `max deg_z P ≤ c − s`.
    pub fn morton(&self, s: &Subject) -> Result<Report, EngineError> {
        let d = &s.diagram;
        let p = self.skein.homfly(d)?;
        let mut r = Report::new(&s.name, "morton");
        let bound = d.crossing_count() as i64 - d.seifert_circle_count() as i64;
        r.count("crossings", d.crossing_count() as i64);
        r.count("seifert_circles", d.seifert_circle_count() as i64);
        r.count("bound", bound);
        r.sides(&p, bound);
        if let Some(m) = top(&mut r, "max_deg_z", &p, "z")? {
            r.pass_if(m <= bound);
        }
        Ok(r)
    }

    /// `max deg_x F ≤ c − b`, with equality demanded on entries flagged
    /// reduced, alternating and prime.
    pub fn kidwell(&self, s: &Subject) -> Result<Report, EngineError> {
        let d = &s.diagram;
        let f = self.kauffman.normalize_f(d)?;
        let mut r = Report::new(&s.name, "kidwell");
        let bound = d.crossing_count() as i64 - d.bridge_length() as i64;
        r.count("crossings", d.crossing_count() as i64);
        r.count("bridge_length", d.bridge_length() as i64);
        r.count("bound", bound);
        r.sides(&f, bound);
        let want_equal = s.flags.reduced && s.flags.alternating && s.flags.prime;
        r.fact("equality_required", want_equal);
        if let Some(m) = top(&mut r, "max_deg_x", &f, "x")? {
            r.fact("equality", m == bound);
            r.pass_if(m <= bound && (!want_equal || m == bound));
        }
        Ok(r)
    }

    /// Compares `max deg_z {K}` with `2 max deg_x F` on this instance.
    pub fn conjecture2(&self, s: &Subject) -> Result<Report, EngineError> {
        let d = &s.diagram;
        let rk = self.rudolph.rudolph_invariant(d)?;
        let f = self.kauffman.normalize_f(d)?;
        let mut r = Report::new(&s.name, "conjecture2");
        let lhs = top(&mut r, "max_deg_z_rudolph", &rk, "z")?;
        let rhs = top(&mut r, "max_deg_x_f", &f, "x")?;
        r.sides(&rk, &f);
        if let (Some(a), Some(b)) = (lhs, rhs) {
            r.pass_if(a == 2 * b);
        }
        Ok(r)
    }

    /// `P(W) = v²δ_P + vz[K,n]` for the `n`-twisted Whitehead double, plus
    /// the degree relations `max deg_z P(W) = 1 + max deg_z [K,n]` and
    /// `max deg_z P(W) − 1 = 2 max deg_x F`, recorded as facts.
    pub fn whitehead(&self, s: &Subject, n: i64, positive_clasp: bool) -> Result<Report, EngineError> {
        let d = &s.diagram;
        let w = whitehead_double(d, n, positive_clasp)?;
        let pw = self.skein.homfly(&w)?;
        let bracket = self.rudolph.bracket(d, &Framing(vec![n]))?;
        let rhs = vz(1, 2, 0) * delta_p() + vz(1, 1, 1) * &bracket;
        let f = self.kauffman.normalize_f(d)?;
        let mut r = Report::new(&s.name, "whitehead");
        r.count("twist", n);
        r.count("crossings_w", w.crossing_count() as i64);
        let dw = top(&mut r, "max_deg_z_w", &pw, "z")?;
        let db = top(&mut r, "max_deg_z_bracket", &bracket, "z")?;
        let df = top(&mut r, "max_deg_x_f", &f, "x")?;
        r.sides(&pw, &rhs);
        if let (Some(dw), Some(db), Some(df)) = (dw, db, df) {
            r.fact("degree_shift", dw == 1 + db);
            r.fact("degree_relation", dw - 1 == 2 * df);
            r.pass_if(pw == rhs);
        }
        Ok(r)
    }

    /// `[K,f](v = s², z = s − s⁻¹) = (D ⊕ 1)(a = s⁻⁴, x = s⁻² − s²)`, where
    /// each sublink carries the framing induced from `f`.
    pub fn jones(&self, s: &Subject, f: &Framing) -> Result<Report, EngineError> {
        let d = &s.diagram;
        let bracket = self.rudolph.bracket(d, f)?;
        let sw = d.component_self_writhe();
        let mut d_sum = BiLaurent::zero(AX);
        for m in SublinkMask::all(d.component_count()) {
            let shift: i64 = (0..sw.len()).filter(|&i| m.contains(i)).map(|i| f.0[i] - sw[i]).sum();
            d_sum += &(ax(1, shift as i32, 0) * self.kauffman.dubrovnik(&d.sublink(m)?)?);
        }
        let lhs = bracket.subst_rational(&rational(&[(1, 2)]), &rational(&[(1, 1), (-1, -1)]))?;
        let rhs = d_sum.subst_rational(&rational(&[(1, -4)]), &rational(&[(1, -2), (-1, 2)]))?;
        let mut r = Report::new(&s.name, "jones");
        r.fact("lhs_polynomial", lhs.as_polynomial().is_some());
        r.fact("rhs_polynomial", rhs.as_polynomial().is_some());
        r.pass_if(lhs == rhs && lhs.as_polynomial().is_some() && rhs.as_polynomial().is_some());
        r.sides(&lhs, &rhs);
        Ok(r)
    }

    /// On a connected reduced alternating diagram with `n` crossings, the
    /// blackboard double has `4n` crossings and `2n + 2` Seifert circles, so
    /// Morton bounds the bracket's `z`-degree by `2n − 2`.
    pub fn doubling(&self, s: &Subject) -> Result<Report, EngineError> {
        let d = &s.diagram;
        let n = d.crossing_count() as i64;
        if n == 0 {
            return Ok(Report::skipped(&s.name, "doubling", "degenerate", "no crossings"));
        }
        let connected = d.loops() == 0 && d.pieces_crossings().len() == 1;
        if !(s.flags.alternating && s.flags.reduced && connected) {
            let why = "needs a connected reduced alternating diagram";
            return Ok(Report::skipped(&s.name, "doubling", "not_applicable", why));
        }
        let dd = double_blackboard(d);
        let bracket = self.skein.homfly(&dd.diagram)?;
        let mut r = Report::new(&s.name, "doubling");
        let c = dd.diagram.crossing_count() as i64;
        let sc = dd.diagram.seifert_circle_count() as i64;
        r.count("crossings", n);
        r.count("double_crossings", c);
        r.count("double_seifert_circles", sc);
        r.count("bound", 2 * n - 2);
        r.sides(&bracket, 2 * n - 2);
        if let Some(m) = top(&mut r, "max_deg_z_bracket", &bracket, "z")? {
            r.fact("crossings_4n", c == 4 * n);
            r.fact("seifert_2n_plus_2", sc == 2 * n + 2);
            r.pass_if(c == 4 * n && sc == 2 * n + 2 && m <= 2 * n - 2);
        }
        Ok(r)
    }

    /// With `X_K ≢ 0 mod 2` on a reduced prime alternating entry:
    /// `max deg_x L = n − 1` and `max deg_z {K} = 2(n − 1)`.
    pub fn x_leading(&self, s: &Subject) -> Result<Report, EngineError> {
        let d = &s.diagram;
        if !s.flags.alternating {
            return Ok(Report::skipped(&s.name, "xleading", "not_applicable", "not alternating"));
        }
        let l = self.kauffman.framed_kauffman(d)?;
        let x = x_leading_of(&l)?;
        let hypothesis = !x.mod2().is_zero();
        let mut r = Report::new(&s.name, "xleading");
        r.fact("hypothesis", hypothesis);
        r.lhs = Some(x.to_string());
        r.residue = Some(x.mod2().to_string());
        if let Some((k, _)) = kappa_reading(&x) {
            r.count("kappa_read", k);
            if let Some(kappa) = s.kappa {
                r.fact("kappa_matches", kappa == k);
            }
        }
        if !hypothesis {
            r.status = Status::Skipped;
            r.reason = Some("hypothesis_failed: X_K vanishes mod 2".to_string());
            return Ok(r);
        }
        if !(s.flags.reduced && s.flags.prime) {
            r.status = Status::Skipped;
            r.reason = Some("not_applicable: not flagged reduced and prime".to_string());
            return Ok(r);
        }
        let n = d.crossing_count() as i64;
        let rk = self.rudolph.rudolph_invariant(d)?;
        let dl = top(&mut r, "max_deg_x_l", &l, "x")?;
        let dr = top(&mut r, "max_deg_z_rudolph", &rk, "z")?;
        r.count("n_minus_1", n - 1);
        if let (Some(dl), Some(dr)) = (dl, dr) {
            r.pass_if(dl == n - 1 && dr == 2 * (n - 1));
        }
        Ok(r)
    }
}

/// Reads `X = c·a^e·(a⁻¹ + a)` as `(|c|, e)`; `None` if `X` has another
/// shape.
pub fn kappa_reading(x: &BiLaurent) -> Option<(i64, i32)> {
    let terms: Vec<_> = x.terms().collect();
    if terms.len() != 2 {
        return None;
    }
    let (&(p0, q0), c0) = terms[0];
    let (&(p1, q1), c1) = terms[1];
    if q0 != 0 || q1 != 0 || p1 != p0 + 2 || c0 != c1 {
        return None;
    }
    let c: i64 = c0.try_into().ok()?;
    Some((c.abs(), p0 + 1))
}
