use std::sync::{Arc, OnceLock};

use super::{intern, suspend, Operad, Plain, PresentedOperad};
use crate::error::{arg_err, Result};
use crate::registry::{Named, Registry};

/// Parameters shared by the named constructions.
#[derive(Clone, Debug, Default)]
pub struct Params {
    /// Dimension parameter of `pois(n)` and of the spheres.
    pub n: Option<i64>,
    /// Operadic suspension applied to the result.
    pub suspend: i64,
    /// Lifts the arity caps.
    pub force: bool,
    /// Underlying operad, for constructions that take one.
    pub operad: Option<String>,
}

impl Params {
    pub fn with_n(n: i64) -> Self {
        Params { n: Some(n), ..Params::default() }
    }

    pub fn require_n(&self, what: &str) -> Result<i64> {
        match self.n {
            Some(n) if n >= 1 => Ok(n),
            Some(n) => Err(arg_err!("{what} needs n >= 1, got {n}")),
            None => Err(arg_err!("{what} needs the parameter n")),
        }
    }
}

pub trait OperadFactory: Named + Send + Sync {
    fn presentation(&self, p: &Params) -> Result<PresentedOperad>;
}

pub const FORCED_CAP: usize = 10;

struct Com;
struct Lie;
struct Pois;

impl Named for Com {
    fn name(&self) -> &'static str {
        "com"
    }
    fn summary(&self) -> &'static str {
        "commutative associative operad, product in degree 0"
    }
}

impl OperadFactory for Com {
    fn presentation(&self, _: &Params) -> Result<PresentedOperad> {
        Ok(PresentedOperad::com())
    }
}

impl Named for Lie {
    fn name(&self) -> &'static str {
        "lie"
    }
    fn summary(&self) -> &'static str {
        "Lie operad, bracket in degree -1"
    }
}

impl OperadFactory for Lie {
    fn presentation(&self, _: &Params) -> Result<PresentedOperad> {
        Ok(PresentedOperad::lie())
    }
}

impl Named for Pois {
    fn name(&self) -> &'static str {
        "pois"
    }
    fn summary(&self) -> &'static str {
        "Poisson_n operad, bracket in degree n-1 (requires n)"
    }
}

impl OperadFactory for Pois {
    fn presentation(&self, p: &Params) -> Result<PresentedOperad> {
        Ok(PresentedOperad::pois(p.require_n("pois")?))
    }
}

pub fn operad_registry() -> &'static Registry<dyn OperadFactory> {
    static REG: OnceLock<Registry<dyn OperadFactory>> = OnceLock::new();
    REG.get_or_init(|| {
        let mut r: Registry<dyn OperadFactory> = Registry::default();
        r.register(Box::new(Com));
        r.register(Box::new(Lie));
        r.register(Box::new(Pois));
        r
    })
}

/// Looks up `name` and applies `p.suspend`.
pub fn build_operad(name: &str, p: &Params) -> Result<Arc<dyn Operad>> {
    let mut pres = operad_registry().get(name)?.presentation(p)?;
    if p.force {
        pres = pres.with_caps(FORCED_CAP, FORCED_CAP);
    }
    let plain: Arc<dyn Operad> = Arc::new(Plain(intern(pres)));
    Ok(if p.suspend == 0 { plain } else { suspend(&plain, p.suspend) })
}
