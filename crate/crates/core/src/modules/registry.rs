use std::sync::{Arc, OnceLock};

use super::{configuration_module, operad_as_module, DiagonalModule, GradedCoalgebraData, RightModule};
use crate::error::{arg_err, Result};
use crate::operads::{build_operad, Params};
use crate::registry::{Named, Registry};

pub trait ModuleFactory: Named + Send + Sync {
    fn build(&self, p: &Params) -> Result<Arc<dyn RightModule>>;
}

struct OperadItself;
struct Config;
struct Sphere;
struct Torus;

impl Named for OperadItself {
    fn name(&self) -> &'static str {
        "operad"
    }
    fn summary(&self) -> &'static str {
        "an operad as a right module over itself (requires the operad name)"
    }
}

impl ModuleFactory for OperadItself {
    fn build(&self, p: &Params) -> Result<Arc<dyn RightModule>> {
        let name = p.operad.as_deref().ok_or_else(|| arg_err!("module kind operad needs an operad name"))?;
        Ok(operad_as_module(build_operad(name, p)?))
    }
}

impl Named for Config {
    fn name(&self) -> &'static str {
        "config"
    }
    fn summary(&self) -> &'static str {
        "homology of configuration spaces of R^n, a pois(n)-module"
    }
}

impl ModuleFactory for Config {
    fn build(&self, p: &Params) -> Result<Arc<dyn RightModule>> {
        configuration_module(p.require_n("config")?)
    }
}

impl Named for Sphere {
    fn name(&self) -> &'static str {
        "sphere"
    }
    fn summary(&self) -> &'static str {
        "smash powers of S^n, a com-module through the diagonal"
    }
}

impl ModuleFactory for Sphere {
    fn build(&self, p: &Params) -> Result<Arc<dyn RightModule>> {
        Ok(Arc::new(DiagonalModule::new(GradedCoalgebraData::sphere(p.require_n("sphere")?)?)?))
    }
}

impl Named for Torus {
    fn name(&self) -> &'static str {
        "torus"
    }
    fn summary(&self) -> &'static str {
        "smash powers of the torus, a com-module through the diagonal"
    }
}

impl ModuleFactory for Torus {
    fn build(&self, _: &Params) -> Result<Arc<dyn RightModule>> {
        Ok(Arc::new(DiagonalModule::new(GradedCoalgebraData::torus())?))
    }
}

pub fn module_registry() -> &'static Registry<dyn ModuleFactory> {
    static REG: OnceLock<Registry<dyn ModuleFactory>> = OnceLock::new();
    REG.get_or_init(|| {
        let mut r: Registry<dyn ModuleFactory> = Registry::default();
        r.register(Box::new(OperadItself));
        r.register(Box::new(Config));
        r.register(Box::new(Sphere));
        r.register(Box::new(Torus));
        r
    })
}

pub fn build_module(kind: &str, p: &Params) -> Result<Arc<dyn RightModule>> {
    module_registry().get(kind)?.build(p)
}
