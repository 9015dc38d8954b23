pub mod kernel;
pub mod probe;
pub mod regions;
pub mod verify;

use potentia::{Setting, TypeIndex};

use crate::config::{parse_list, parse_usize, CliError, CliResult, Params};

pub const SETTINGS: [&str; 5] = ["hermite", "laguerre-hermite", "laguerre-conv", "laguerre-standard", "dunkl"];

/// Dimension from `d`, else from the length of `alpha`, else 1.
pub fn dimension(p: &Params) -> CliResult<usize> {
    let d = match p.get("d") {
        Some(v) => parse_usize("d", &v)?,
        None => p.values_len("alpha").unwrap_or(1),
    };
    if d == 0 {
        return Err(CliError::Invalid("d must be positive".into()));
    }
    Ok(d)
}

/// `alpha` as a type index of dimension d; a single entry is repeated.
pub fn type_index(p: &Params, d: usize) -> CliResult<Option<TypeIndex>> {
    let Some(raw) = p.get("alpha") else { return Ok(None) };
    let mut a = parse_list("alpha", &raw)?;
    if a.len() == 1 && d > 1 {
        a = vec![a[0]; d];
    }
    if a.len() != d {
        return Err(CliError::Invalid(format!("alpha has {} entries for d = {d}", a.len())));
    }
    Ok(Some(TypeIndex::new(a)?))
}

pub fn build_setting(name: &str, p: &Params) -> CliResult<Setting> {
    let d = dimension(p)?;
    let alpha = type_index(p, d)?;
    let need = |a: Option<TypeIndex>| a.ok_or_else(|| CliError::Usage(format!("setting {name} needs alpha")));
    Ok(match name {
        "hermite" => {
            if alpha.is_some() {
                return Err(CliError::Invalid("the hermite setting takes no alpha".into()));
            }
            Setting::hermite(d)
        }
        "laguerre-hermite" => Setting::LaguerreHermite(need(alpha)?),
        "laguerre-conv" => Setting::LaguerreConv(need(alpha)?),
        "dunkl" => Setting::Dunkl(need(alpha)?),
        "laguerre-standard" => {
            if d != 1 {
                return Err(CliError::Invalid("laguerre-standard is one-dimensional".into()));
            }
            Setting::LaguerreStandard(need(alpha)?.0[0])
        }
        _ => {
            return Err(CliError::Invalid(format!("unknown setting {name:?} (expected one of {})", SETTINGS.join(", "))))
        }
    })
}
