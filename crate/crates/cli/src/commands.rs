use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use chebgamma::gammafam::{self, FunctionKind, FunctionTable};
use chebgamma::mp;
use chebgamma::scan::{self, error_grid, error_scan, linear_grid};
use chebgamma::{tablefile, Error};

/// Exit code and message for a failed command.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_IO: u8 = 3;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidArgument(_) => EXIT_USAGE,
            Error::Domain(_)
            | Error::Capacity { .. }
            | Error::ScanExhausted { .. }
            | Error::FitFailure { .. } => EXIT_DOMAIN,
            Error::Parse { .. } | Error::Io(_) => EXIT_IO,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::Io(e).into()
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn parse_kind(name: &str) -> Result<FunctionKind, Failure> {
    Ok(name.parse::<FunctionKind>()?)
}

fn open_out(out: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Failure::from(Error::Io(io::Error::new(e.kind(), format!("{}: {e}", p.display()))))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_table(path: &Path) -> Result<FunctionTable, Failure> {
    tablefile::load(path).map_err(|e| match e {
        Error::Io(io) => Failure::from(Error::Io(io::Error::new(
            io.kind(),
            format!("{}: {io}", path.display()),
        ))),
        other => other.into(),
    })
}

/// The table for `kind`, read from `path` or generated at `digits`.
fn table_for(kind: FunctionKind, path: Option<&Path>, digits: usize) -> Result<FunctionTable, Failure> {
    let table = match path {
        Some(p) => load_table(p)?,
        None => gammafam::generate_kind(kind, digits)?,
    };
    if table.kind() != kind {
        return Err(usage(format!(
            "table holds {} but {kind} was requested",
            table.kind()
        )));
    }
    Ok(table)
}

pub fn gen(function: &str, digits: usize, ncoeffs: Option<usize>, out: Option<&Path>) -> Result<(), Failure> {
    let kind = parse_kind(function)?;
    if digits == 0 {
        return Err(usage("--digits must be positive"));
    }
    if ncoeffs == Some(0) {
        return Err(usage("--ncoeffs must be positive"));
    }
    let table = match (kind, ncoeffs) {
        (FunctionKind::Psi(m), n) => {
            let t = gammafam::generate_polygamma(m, digits)?;
            match n {
                Some(n) => t.truncated(n)?,
                None => t,
            }
        }
        (_, None) => gammafam::generate_auto(kind, digits)?,
        (_, Some(n)) => {
            let ctx = gammafam::default_context(digits, n)?;
            gammafam::generate_table(kind, n, &ctx)?
        }
    };
    let mut w = open_out(out)?;
    w.write_all(tablefile::to_text(&table).as_bytes())?;
    w.flush()?;
    let tail = table
        .tail_bound()
        .map(|t| format!("{t:.3e}"))
        .unwrap_or_else(|| "unknown".into());
    let summary = format!("{kind}: {} coefficients, tail bound {tail}", table.len());
    match out {
        Some(p) => println!("{summary}; wrote {}", p.display()),
        None => eprintln!("{summary}"),
    }
    Ok(())
}

pub fn eval(function: &str, z: &str, table: Option<&Path>, digits: usize) -> Result<(), Failure> {
    let kind = parse_kind(function)?;
    let t = table_for(kind, table, digits)?;
    let bits = mp::bits_for_digits(t.target_digits() + 10);
    let zr = mp::parse_decimal(z, bits).ok_or_else(|| usage(format!("'{z}' is not a number")))?;
    let v = t.eval(&zr)?;
    println!("{}", mp::format_decimal(&v, t.target_digits()));
    Ok(())
}

pub struct ErrscanOptions<'a> {
    pub function: &'a str,
    pub table: Option<&'a Path>,
    pub digits: usize,
    pub ncoeffs: Option<usize>,
    pub zmin: f64,
    pub zmax: f64,
    pub points: usize,
    pub extend: bool,
    pub out: Option<&'a Path>,
}

pub fn errscan(o: ErrscanOptions<'_>) -> Result<(), Failure> {
    let kind = parse_kind(o.function)?;
    if o.zmin < 1.0 && !o.extend {
        return Err(Error::Domain(format!(
            "zmin = {} is below 1; pass --extend to scan through the recurrence",
            o.zmin
        ))
        .into());
    }
    let grid = error_grid(o.zmin, o.zmax, o.points)?;
    let mut t = table_for(kind, o.table, o.digits)?;
    if let Some(n) = o.ncoeffs {
        t = t.truncated(n)?;
    }
    let s = error_scan(&t, &grid)?;
    let mut w = open_out(o.out)?;
    scan::write_error_csv(&s, &mut w)?;
    w.flush()?;
    let summary = format!(
        "{kind} ({} coefficients, {} points): max rel error {:.3e} at z = {}; max abs error {} at z = {}",
        t.len(),
        s.rows.len(),
        s.summary.max_rel_error,
        scan::format_z(s.summary.argmax_rel),
        mp::format_sci(&s.summary.max_abs_error, 4),
        scan::format_z(s.summary.argmax_abs),
    );
    if o.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

pub fn stirling(zmin: f64, zmax: f64, points: usize, nscan: usize, out: Option<&Path>) -> Result<(), Failure> {
    if zmin < 1.0 {
        return Err(Error::Domain(format!("Stirling scans need zmin ≥ 1, got {zmin}")).into());
    }
    let grid = linear_grid(zmin, zmax, points)?;
    let rows = scan::stirling_scan(&grid, nscan)?;
    let mut w = open_out(out)?;
    scan::write_stirling_csv(&rows, &mut w)?;
    w.flush()?;
    let flagged = rows.iter().filter(|r| r.report.is_none()).count();
    if flagged > 0 {
        eprintln!("{flagged} rows found no minimum within {nscan} terms");
    }
    Ok(())
}

pub fn harmonic(m: u32, n: u64, table: Option<&Path>, digits: usize) -> Result<(), Failure> {
    let kind = FunctionKind::Psi(m);
    let hint = |p: &Path| {
        format!("create it with `chebgamma gen {kind} --digits {digits} --out {}`", p.display())
    };
    let t = match table {
        Some(p) if !p.exists() => {
            return Err(Failure {
                code: EXIT_IO,
                message: format!("no {kind} table at {}; {}", p.display(), hint(p)),
            })
        }
        Some(p) => {
            let t = load_table(p)?;
            if t.kind() != kind {
                return Err(usage(format!(
                    "order m = {m} needs a {kind} table but {} holds {}; {}",
                    p.display(),
                    t.kind(),
                    hint(p)
                )));
            }
            t
        }
        None => gammafam::generate_kind(kind, digits)?,
    };
    let r = if m == 0 {
        gammafam::harmonic(n, &t)?
    } else {
        gammafam::generalized_harmonic(m, n, &t)?
    };
    println!("{}", mp::format_decimal(&r.value, t.target_digits()));
    Ok(())
}
