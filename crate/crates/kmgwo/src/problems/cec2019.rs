//! The CEC2019 "100-Digit Challenge" test suite, F1 through F10.
//!
//! Every function is normalized so its global minimum value is 1. F1–F3 are
//! fixed-dimension problems evaluated as-is; F4–F10 are classical functions
//! composed with a shift vector and a rotation matrix loaded from data files:
//! `z = M * (scale * (x - o))`, base function applied to `z`, plus 1.
//!
//! | id | function                  | dim | bounds          | scale    |
//! |----|---------------------------|-----|-----------------|----------|
//! | 1  | Chebyshev polynomial fit  | 9   | [-8192, 8192]   | —        |
//! | 2  | inverse Hilbert matrix    | 16  | [-16384, 16384] | —        |
//! | 3  | Lennard-Jones cluster     | 18  | [-4, 4]         | —        |
//! | 4  | Rastrigin                 | 10  | [-100, 100]     | 5.12/100 |
//! | 5  | Griewank                  | 10  | [-100, 100]     | 600/100  |
//! | 6  | Weierstrass               | 10  | [-100, 100]     | 0.5/100  |
//! | 7  | modified Schwefel         | 10  | [-100, 100]     | 1000/100 |
//! | 8  | expanded Schaffer F6      | 10  | [-100, 100]     | 1        |
//! | 9  | Happy Cat                 | 10  | [-100, 100]     | 5/100    |
//! | 10 | Ackley                    | 10  | [-100, 100]     | 1        |
//!
//! Data files follow the suite's naming scheme (`shift_data_N.txt` with
//! `dim` values, `M_N_D10.txt` with `dim * dim` values in row-major order);
//! any file set in that format is a drop-in, including generated stand-ins
//! from [`generate_stand_in_data`].

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::DataError;
use crate::rng::{RandomStream, UniformSource};
use crate::space::{Bounds, Problem};
use crate::{Error, Result};

pub const FUNCTION_COUNT: u8 = 10;

/// Function ids that require shift/rotation data files.
pub const TRANSFORMED_IDS: std::ops::RangeInclusive<u8> = 4..=10;

/// Fixed dimension per function id.
pub fn dimension(id: u8) -> usize {
    match id {
        1 => 9,
        2 => 16,
        3 => 18,
        4..=10 => 10,
        _ => panic!("CEC2019 defines functions 1..=10, got {id}"),
    }
}

/// Symmetric bound half-range per function id.
pub fn bound_half_range(id: u8) -> f64 {
    match id {
        1 => 8192.0,
        2 => 16384.0,
        3 => 4.0,
        4..=10 => 100.0,
        _ => panic!("CEC2019 defines functions 1..=10, got {id}"),
    }
}

/// Half-range of the shared search box used by the comparison protocol.
///
/// The benchmark drivers behind the published comparison tables run every
/// function in the same `[-100, 100]` box rather than the per-function
/// definition bounds. The reported values are only reachable there: with
/// the same evaluation budget, plain random search inside F3's `[-4, 4]`
/// definition box already beats the tables' converged F3 values, which an
/// elitist optimizer cannot do. [`benchmark_problem`] applies this box;
/// [`problem`] keeps the definition bounds.
pub const SEARCH_HALF_RANGE: f64 = 100.0;

fn name(id: u8) -> &'static str {
    match id {
        1 => "chebyshev",
        2 => "inverse-hilbert",
        3 => "lennard-jones",
        4 => "rastrigin",
        5 => "griewank",
        6 => "weierstrass",
        7 => "modified-schwefel",
        8 => "expanded-schaffer-f6",
        9 => "happy-cat",
        10 => "ackley",
        _ => unreachable!(),
    }
}

fn scale(id: u8) -> f64 {
    match id {
        4 => 5.12 / 100.0,
        5 => 600.0 / 100.0,
        6 => 0.5 / 100.0,
        7 => 1000.0 / 100.0,
        8 => 1.0,
        9 => 5.0 / 100.0,
        10 => 1.0,
        _ => unreachable!(),
    }
}

/// Shift vector and row-major rotation matrix for one transformed function.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionData {
    pub shift: Vec<f64>,
    pub rotation: Vec<f64>,
}

/// Loaded data for every transformed function (F4–F10).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteData {
    per_function: BTreeMap<u8, FunctionData>,
}

impl SuiteData {
    pub fn function_data(&self, id: u8) -> Option<&FunctionData> {
        self.per_function.get(&id)
    }
}

/// One suite function, ready to evaluate.
#[derive(Debug, Clone)]
pub struct Cec2019Function {
    pub id: u8,
    pub bounds: Bounds,
    pub shift_vector: Option<Vec<f64>>,
    /// Row-major `dimension * dimension` rotation matrix.
    pub rotation_matrix: Option<Vec<f64>>,
}

impl Cec2019Function {
    pub fn dimension(&self) -> usize {
        dimension(self.id)
    }

    pub fn name(&self) -> &'static str {
        name(self.id)
    }
}

pub fn shift_file_name(id: u8) -> String {
    format!("shift_data_{id}.txt")
}

pub fn rotation_file_name(id: u8) -> String {
    format!("M_{id}_D{}.txt", dimension(id))
}

fn parse_data_file(path: &Path, expected: usize) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).map_err(|source| DataError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut values = Vec::with_capacity(expected);
    for (line_idx, line) in text.lines().enumerate() {
        for (col_idx, token) in line.split_whitespace().enumerate() {
            let value: f64 = token.parse().map_err(|_| DataError::Parse {
                path: path.to_path_buf(),
                line: line_idx + 1,
                column: col_idx + 1,
                token: token.to_string(),
            })?;
            values.push(value);
        }
    }
    if values.len() != expected {
        return Err(DataError::WrongCount {
            path: path.to_path_buf(),
            expected,
            actual: values.len(),
        }
        .into());
    }
    Ok(values)
}

/// Loads shift vectors and rotation matrices for F4–F10 from `directory`.
/// F1–F3 carry no data files.
pub fn load_data(directory: &Path) -> Result<SuiteData> {
    let mut per_function = BTreeMap::new();
    for id in TRANSFORMED_IDS {
        let dim = dimension(id);
        let shift_path = directory.join(shift_file_name(id));
        if !shift_path.is_file() {
            return Err(DataError::MissingFile {
                function: id,
                path: shift_path,
            }
            .into());
        }
        let rotation_path = directory.join(rotation_file_name(id));
        if !rotation_path.is_file() {
            return Err(DataError::MissingFile {
                function: id,
                path: rotation_path,
            }
            .into());
        }
        let shift = parse_data_file(&shift_path, dim)?;
        let rotation = parse_data_file(&rotation_path, dim * dim)?;
        per_function.insert(id, FunctionData { shift, rotation });
    }
    Ok(SuiteData { per_function })
}

/// Writes a data set back out in the suite's file format. Values render in
/// shortest round-trip decimal form, so a load/write/load cycle is exact.
pub fn write_data(data: &SuiteData, directory: &Path) -> std::io::Result<()> {
    fs::create_dir_all(directory)?;
    for (id, function_data) in &data.per_function {
        let dim = dimension(*id);
        let mut shift_text = String::new();
        for (i, v) in function_data.shift.iter().enumerate() {
            if i > 0 {
                shift_text.push(' ');
            }
            let _ = write!(shift_text, "{v}");
        }
        shift_text.push('\n');
        fs::write(directory.join(shift_file_name(*id)), shift_text)?;

        let mut rotation_text = String::new();
        for row in function_data.rotation.chunks(dim) {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    rotation_text.push(' ');
                }
                let _ = write!(rotation_text, "{v}");
            }
            rotation_text.push('\n');
        }
        fs::write(directory.join(rotation_file_name(*id)), rotation_text)?;
    }
    Ok(())
}

/// Generates a seeded stand-in data set: shifts uniform in `[-80, 80]` and
/// orthonormal rotation matrices (Gram-Schmidt over Gaussian rows). Use when
/// the suite's distributed data files are not available; the transformed
/// functions keep their minimum of 1 at `x = shift` by construction.
pub fn generate_stand_in_data(seed: u64) -> SuiteData {
    let mut rng = RandomStream::new(seed);
    let mut per_function = BTreeMap::new();
    for id in TRANSFORMED_IDS {
        let dim = dimension(id);
        let shift = (0..dim).map(|_| rng.uniform_in(-80.0, 80.0)).collect();
        let rotation = random_rotation(dim, &mut rng);
        per_function.insert(id, FunctionData { shift, rotation });
    }
    SuiteData { per_function }
}

fn gaussian(rng: &mut RandomStream) -> f64 {
    let u1 = (1.0 - rng.uniform01()).max(f64::MIN_POSITIVE);
    let u2 = rng.uniform01();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

/// Row-major orthonormal matrix via modified Gram-Schmidt on Gaussian rows.
fn random_rotation(dim: usize, rng: &mut RandomStream) -> Vec<f64> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(dim);
    while rows.len() < dim {
        let mut candidate: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
        for row in &rows {
            let dot: f64 = candidate.iter().zip(row).map(|(a, b)| a * b).sum();
            for (c, r) in candidate.iter_mut().zip(row) {
                *c -= dot * r;
            }
        }
        let norm = candidate.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue; // essentially-dependent draw; try again
        }
        for c in &mut candidate {
            *c /= norm;
        }
        rows.push(candidate);
    }
    rows.concat()
}

/// Builds one suite function. F4–F10 need `data`; F1–F3 ignore it.
pub fn function(id: u8, data: &SuiteData) -> Result<Cec2019Function> {
    if !(1..=FUNCTION_COUNT).contains(&id) {
        return Err(Error::InvalidConfig(format!(
            "CEC2019 defines functions 1..=10, got {id}"
        )));
    }
    let half = bound_half_range(id);
    let bounds = Bounds::symmetric(dimension(id), -half, half)?;
    if TRANSFORMED_IDS.contains(&id) {
        let function_data = data.function_data(id).ok_or_else(|| {
            Error::from(DataError::MissingFile {
                function: id,
                path: PathBuf::from(shift_file_name(id)),
            })
        })?;
        Ok(Cec2019Function {
            id,
            bounds,
            shift_vector: Some(function_data.shift.clone()),
            rotation_matrix: Some(function_data.rotation.clone()),
        })
    } else {
        Ok(Cec2019Function {
            id,
            bounds,
            shift_vector: None,
            rotation_matrix: None,
        })
    }
}

/// Shift, scale, and rotate `x` into the base function's frame.
fn transform(function: &Cec2019Function, x: &[f64]) -> Vec<f64> {
    let dim = x.len();
    match (&function.shift_vector, &function.rotation_matrix) {
        (Some(shift), Some(rotation)) => {
            let s = scale(function.id);
            let shifted: Vec<f64> = x.iter().zip(shift).map(|(xi, oi)| (xi - oi) * s).collect();
            (0..dim)
                .map(|i| (0..dim).map(|j| rotation[i * dim + j] * shifted[j]).sum())
                .collect()
        }
        _ => x.to_vec(),
    }
}

/// Evaluates one suite function.
///
/// # Panics
///
/// Panics if `x` does not match the function's dimension.
pub fn evaluate(function: &Cec2019Function, x: &[f64]) -> f64 {
    assert_eq!(
        x.len(),
        function.dimension(),
        "F{} expects dimension {}, got {}",
        function.id,
        function.dimension(),
        x.len()
    );
    let z = transform(function, x);
    let base = match function.id {
        1 => chebyshev(&z),
        2 => inverse_hilbert(&z),
        3 => lennard_jones(&z),
        4 => rastrigin(&z),
        5 => griewank(&z),
        6 => weierstrass(&z),
        7 => modified_schwefel(&z),
        8 => expanded_schaffer_f6(&z),
        9 => happy_cat(&z),
        10 => ackley(&z),
        _ => unreachable!(),
    };
    base + 1.0
}

/// The suite function as a [`Problem`] over its definition bounds.
pub fn problem(id: u8, data: &SuiteData) -> Result<Problem> {
    let function = function(id, data)?;
    let label = format!("cec19:f{id}");
    Ok(Problem::new(label, function.bounds.clone(), move |x| {
        evaluate(&function, x)
    }))
}

/// The suite function as a [`Problem`] over the comparison protocol's
/// shared `[-100, 100]` search box (see [`SEARCH_HALF_RANGE`]).
pub fn benchmark_problem(id: u8, data: &SuiteData) -> Result<Problem> {
    let function = function(id, data)?;
    let bounds = Bounds::symmetric(function.dimension(), -SEARCH_HALF_RANGE, SEARCH_HALF_RANGE)?;
    let label = format!("cec19:f{id}");
    Ok(Problem::new(label, bounds, move |x| evaluate(&function, x)))
}

/// Chebyshev polynomial fitting over a sampled grid: penalties for leaving
/// the `[-1, 1]` band on `[-1, 1]` plus boundary terms at `y = ±1.2` against
/// the degree-`(d-1)` Chebyshev boundary value.
fn chebyshev(x: &[f64]) -> f64 {
    let nx = x.len();
    let mut a = 1.0f64;
    let mut b = 1.2f64;
    for _ in 0..nx - 2 {
        let next = 2.4 * b - a;
        a = b;
        b = next;
    }
    let boundary = b;

    let sample = 32 * nx;
    let dy = 2.0 / sample as f64;
    let mut y = -1.0f64;
    let mut sum = 0.0;
    for _ in 0..=sample {
        let mut px = x[0];
        for &coef in &x[1..] {
            px = y * px + coef;
        }
        if !(-1.0..=1.0).contains(&px) {
            sum += (1.0 - px.abs()) * (1.0 - px.abs());
        }
        y += dy;
    }

    for _ in 0..2 {
        let mut px = x[0];
        for &coef in &x[1..] {
            px = 1.2 * px + coef;
        }
        if px < boundary {
            sum += px * px;
        }
    }
    sum
}

/// Deviation of `H * Z` from the identity, summed entrywise, where `Z` is
/// `x` read as a row-major square matrix.
fn inverse_hilbert(x: &[f64]) -> f64 {
    let b = (x.len() as f64).sqrt() as usize;
    debug_assert_eq!(b * b, x.len());
    let mut sum = 0.0;
    for i in 0..b {
        for j in 0..b {
            let mut y = 0.0;
            for k in 0..b {
                y += x[j + b * k] / (i + k + 1) as f64;
            }
            sum += if i == j { (y - 1.0).abs() } else { y.abs() };
        }
    }
    sum
}

/// Known minimum energy of the 6-atom cluster, subtracted so the global
/// minimum of the normalized function is 0.
const LENNARD_JONES_MINIMUM_6: f64 = -12.712062;

/// Pair-potential energy of `len/3` atoms in 3-D, offset by the known
/// 6-atom minimum.
fn lennard_jones(x: &[f64]) -> f64 {
    let atoms = x.len() / 3;
    debug_assert_eq!(atoms, 6, "the suite fixes F3 at 6 atoms");
    let mut sum = 0.0;
    for i in 0..atoms - 1 {
        for j in i + 1..atoms {
            let dx = x[3 * i] - x[3 * j];
            let dy = x[3 * i + 1] - x[3 * j + 1];
            let dz = x[3 * i + 2] - x[3 * j + 2];
            let ed = dx * dx + dy * dy + dz * dz;
            let ud = ed * ed * ed;
            if ed > 0.0 {
                sum += (1.0 / ud - 2.0) / ud;
            } else {
                sum += 1.0e20;
            }
        }
    }
    sum - LENNARD_JONES_MINIMUM_6
}

fn rastrigin(z: &[f64]) -> f64 {
    z.iter()
        .map(|&zi| zi * zi - 10.0 * (2.0 * PI * zi).cos() + 10.0)
        .sum()
}

fn griewank(z: &[f64]) -> f64 {
    let sum: f64 = z.iter().map(|&zi| zi * zi).sum();
    let product: f64 = z
        .iter()
        .enumerate()
        .map(|(i, &zi)| (zi / ((i + 1) as f64).sqrt()).cos())
        .product();
    sum / 4000.0 - product + 1.0
}

fn weierstrass(z: &[f64]) -> f64 {
    const K_MAX: usize = 20;
    let mut a_pow = [0.0f64; K_MAX + 1];
    let mut two_pi_b_pow = [0.0f64; K_MAX + 1];
    let mut a = 1.0f64;
    let mut b = 1.0f64;
    for k in 0..=K_MAX {
        a_pow[k] = a;
        two_pi_b_pow[k] = 2.0 * PI * b;
        a *= 0.5;
        b *= 3.0;
    }
    let mut total = 0.0;
    for &zi in z {
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        for k in 0..=K_MAX {
            sum += a_pow[k] * (two_pi_b_pow[k] * (zi + 0.5)).cos();
            sum2 += a_pow[k] * (two_pi_b_pow[k] * 0.5).cos();
        }
        total += sum;
        total -= sum2;
    }
    total
}

fn modified_schwefel(z: &[f64]) -> f64 {
    let nx = z.len() as f64;
    let mut sum = 0.0;
    for &zi in z {
        let shifted = zi + 4.209687462275036e2;
        if shifted > 500.0 {
            let wrapped = 500.0 - shifted % 500.0;
            sum -= wrapped * wrapped.abs().sqrt().sin();
            let tmp = (shifted - 500.0) / 100.0;
            sum += tmp * tmp / nx;
        } else if shifted < -500.0 {
            let wrapped = shifted.abs() % 500.0 - 500.0;
            sum -= wrapped * wrapped.abs().sqrt().sin();
            let tmp = (shifted + 500.0) / 100.0;
            sum += tmp * tmp / nx;
        } else {
            sum -= shifted * shifted.abs().sqrt().sin();
        }
    }
    sum + 4.189828872724338e2 * nx
}

fn schaffer_f6(a: f64, b: f64) -> f64 {
    let r2 = a * a + b * b;
    let s = r2.sqrt().sin();
    let denom = 1.0 + 0.001 * r2;
    0.5 + (s * s - 0.5) / (denom * denom)
}

fn expanded_schaffer_f6(z: &[f64]) -> f64 {
    let n = z.len();
    let mut sum = 0.0;
    for i in 0..n - 1 {
        sum += schaffer_f6(z[i], z[i + 1]);
    }
    sum + schaffer_f6(z[n - 1], z[0])
}

fn happy_cat(z: &[f64]) -> f64 {
    let nx = z.len() as f64;
    let mut r2 = 0.0;
    let mut sum_z = 0.0;
    for &zi in z {
        let shifted = zi - 1.0;
        r2 += shifted * shifted;
        sum_z += shifted;
    }
    (r2 - nx).abs().powf(0.25) + (0.5 * r2 + sum_z) / nx + 0.5
}

fn ackley(z: &[f64]) -> f64 {
    let nx = z.len() as f64;
    let sum_sq: f64 = z.iter().map(|&zi| zi * zi).sum();
    let sum_cos: f64 = z.iter().map(|&zi| (2.0 * PI * zi).cos()).sum();
    std::f64::consts::E - 20.0 * (-0.2 * (sum_sq / nx).sqrt()).exp() - (sum_cos / nx).exp() + 20.0
}
