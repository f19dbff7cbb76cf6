//! Parsers for the symbol, grid and transfer-map mini-languages.

use std::path::Path;

use lct::ct_core::VerticalSymbol;
use lct::functional_calculus::TransferMap;
use lct::io::read_tabulated_symbol;
use num_complex::Complex64;

use crate::CliError;

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn parse_real(s: &str, what: &str) -> Result<f64, CliError> {
    s.trim().parse::<f64>().map_err(|_| config_err(format!("{what}: '{s}' is not a number")))
}

/// `1.5`, `-2i`, `1+0i`, `0.3-2e-1i`.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let t = s.trim();
    let err = || config_err(format!("'{s}' is not a complex number"));
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(t, "constant")?, 0.0));
    };
    // Split at the last sign that is not an exponent sign or the leading sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    let re: f64 = re.parse().map_err(|_| err())?;
    let im: f64 = im.parse().map_err(|_| err())?;
    Ok(Complex64::new(re, im))
}

/// `kind[:param[,param]]`: `indicator:0.5`, `constant:1+0i`, `sine`,
/// `osc_exp`, `inv_sqrt_sin_inv`, `tabulated:path.csv`.
pub fn parse_symbol(s: &str) -> Result<VerticalSymbol, CliError> {
    let (kind, params) = match s.split_once(':') {
        Some((k, p)) => (k.trim(), Some(p.trim())),
        None => (s.trim(), None),
    };
    let no_params = |sym: VerticalSymbol| match params {
        None => Ok(sym),
        Some(_) => Err(config_err(format!("symbol '{kind}' takes no parameters"))),
    };
    match kind {
        "indicator" => {
            let p = params.ok_or_else(|| config_err("indicator needs a length, e.g. indicator:0.5"))?;
            VerticalSymbol::indicator(parse_real(p, "indicator length")?).map_err(|e| config_err(e.to_string()))
        }
        "constant" => Ok(VerticalSymbol::constant(parse_complex(params.unwrap_or("1"))?)),
        "sine" => no_params(VerticalSymbol::sine()),
        "osc_exp" => no_params(VerticalSymbol::osc_exp()),
        "inv_sqrt_sin_inv" => no_params(VerticalSymbol::inv_sqrt_sin_inv()),
        "tabulated" => {
            let p = params.ok_or_else(|| config_err("tabulated needs a file, e.g. tabulated:symbol.csv"))?;
            read_tabulated_symbol(Path::new(p)).map_err(CliError::from_input)
        }
        other => Err(config_err(format!(
            "unknown symbol kind '{other}' (expected indicator, constant, sine, osc_exp, inv_sqrt_sin_inv or tabulated)"
        ))),
    }
}

/// `log:min:max:count` or `lin:min:max:count`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let [kind, lo, hi, n] = parts[..] else {
        return Err(config_err(format!("grid '{s}' is not kind:min:max:count")));
    };
    let (lo, hi) = (parse_real(lo, "grid min")?, parse_real(hi, "grid max")?);
    let n: usize = n.parse().map_err(|_| config_err(format!("grid count '{n}' is not a whole number")))?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(config_err(format!("grid needs finite min < max, got {lo} and {hi}")));
    }
    if n < 2 {
        return Err(config_err("grid count must be at least 2"));
    }
    let step = |i: usize| i as f64 / (n - 1) as f64;
    match kind {
        "lin" => Ok((0..n).map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * step(i) }).collect()),
        "log" => {
            if lo <= 0.0 {
                return Err(config_err("a log grid needs min > 0"));
            }
            Ok((0..n).map(|i| if i == n - 1 { hi } else { lo * (hi / lo).powf(step(i)) }).collect())
        }
        other => Err(config_err(format!("grid kind '{other}' is not lin or log"))),
    }
}

/// `delta:λ`, `delta_inverse:λ`, `transfer:λ1,λ2`, `nabla:λ` (with the
/// symbol and level given separately).
pub fn parse_map(s: &str, symbol: Option<&VerticalSymbol>, k: u32) -> Result<TransferMap, CliError> {
    let (kind, params) = s.split_once(':').ok_or_else(|| config_err(format!("map '{s}' is not kind:params")))?;
    let nums = params.split(',').map(|p| parse_real(p, "map parameter")).collect::<Result<Vec<_>, _>>()?;
    if let Some(bad) = nums.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
        return Err(config_err(format!("map parameter {bad} must be positive")));
    }
    match (kind.trim(), &nums[..]) {
        ("delta", &[l]) => Ok(TransferMap::Delta(l)),
        ("delta_inverse", &[l]) => Ok(TransferMap::DeltaInverse(l)),
        ("transfer", &[l1, l2]) => TransferMap::transfer(l1, l2).map_err(|e| config_err(e.to_string())),
        ("nabla", &[l]) => {
            let a = symbol.ok_or_else(|| config_err("nabla needs --symbol"))?;
            Ok(TransferMap::Nabla { symbol: a.clone(), lambda: l, level: k })
        }
        _ => Err(config_err(format!(
            "map '{s}' is not one of delta:λ, delta_inverse:λ, transfer:λ1,λ2, nabla:λ"
        ))),
    }
}
