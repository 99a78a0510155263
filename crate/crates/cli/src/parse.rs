use gbf::ParamPair;

use crate::exit::CliError;

/// "a:b[,a:b...]".
pub fn params_list(s: &str) -> Result<Vec<ParamPair>, CliError> {
    let pairs = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (a, b) = p
                .split_once(':')
                .ok_or_else(|| CliError::usage(format!("params `{p}` must look like a:b")))?;
            ParamPair::new(number(a)?, number(b)?).map_err(CliError::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if pairs.is_empty() {
        return Err(CliError::usage("empty --params"));
    }
    Ok(pairs)
}

/// A comma list "x1,x2,..." or a linspace "start:stop:count".
pub fn grid(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let points = match parts.as_slice() {
        [start, stop, count] => {
            let (lo, hi) = (number(start)?, number(stop)?);
            let n: usize = count
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("bad count `{count}` in grid `{s}`")))?;
            match n {
                0 => Vec::new(),
                1 => vec![lo],
                _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
            }
        }
        [_] => s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(number)
            .collect::<Result<Vec<_>, _>>()?,
        _ => return Err(CliError::usage(format!("grid `{s}` is neither a list nor start:stop:count"))),
    };
    if points.is_empty() {
        return Err(CliError::usage("empty grid"));
    }
    Ok(points)
}

pub fn number(s: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("`{s}` is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::usage(format!("`{s}` is not finite")))
    }
}

pub fn list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|p| p.trim().to_string())
        .filter(|p| !p.is_empty())
        .collect()
}

/// "B1", "B2.5", "S3".
pub fn class_spec(s: &str) -> Result<(gbf::monotone::ClassId, f64), CliError> {
    use gbf::monotone::ClassId;
    let (kind, order) = s.split_at(s.len().min(1));
    let class = match kind {
        "B" => ClassId::BLambda,
        "S" => ClassId::SRhoNecessary,
        _ => return Err(CliError::usage(format!("class `{s}` must be B<order> or S<order>"))),
    };
    let order = number(order)?;
    if order <= 0.0 {
        return Err(CliError::usage(format!("class order in `{s}` must be positive")));
    }
    Ok((class, order))
}
