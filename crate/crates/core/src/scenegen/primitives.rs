use super::Vec3;
use crate::imagecore::ObjectShape;

/// Ray-surface intersection in object-local coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hit {
    /// Ray parameter (`origin + t·dir`).
    pub t: f64,
    /// Outward unit normal.
    pub normal: Vec3,
}

/// Solid centered at the local origin, inscribed in a sphere of radius
/// `bound`.
///
/// * sphere: radius `bound`
/// * cube: axis-aligned, half-edge `bound/√3`
/// * cone: axis +y, apex at `y = bound`, base disk at `y = -0.6·bound` of radius `0.8·bound`
/// * torus: axis +z, ring radius `0.7·bound`, tube radius `0.3·bound`
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Primitive {
    Sphere { radius: f64 },
    Cube { half_edge: f64 },
    Cone { apex: f64, base: f64, slope: f64 },
    Torus { ring: f64, tube: f64 },
}

/// Bisection stops once the bracket is shorter than this along the ray (m).
const TORUS_TOLERANCE: f64 = 1e-9;
/// Smallest sphere-tracing step (m); crossings thinner than this are missed.
const TORUS_MIN_STEP: f64 = 2e-5;
const TORUS_MAX_STEPS: usize = 20_000;

impl Primitive {
    pub fn new(shape: ObjectShape, bound: f64) -> Self {
        match shape {
            ObjectShape::Sphere => Primitive::Sphere { radius: bound },
            ObjectShape::Cube => Primitive::Cube {
                half_edge: bound / 3f64.sqrt(),
            },
            ObjectShape::Cone => Primitive::Cone {
                apex: bound,
                base: -0.6 * bound,
                slope: 0.5,
            },
            ObjectShape::Torus => Primitive::Torus {
                ring: 0.7 * bound,
                tube: 0.3 * bound,
            },
        }
    }

    pub fn bounding_radius(&self) -> f64 {
        match *self {
            Primitive::Sphere { radius } => radius,
            Primitive::Cube { half_edge } => half_edge * 3f64.sqrt(),
            Primitive::Cone { apex, base, slope } => {
                let rim = slope * (apex - base);
                apex.max((rim * rim + base * base).sqrt())
            }
            Primitive::Torus { ring, tube } => ring + tube,
        }
    }

    /// Nearest intersection with `t > t_min`.
    pub fn intersect(&self, origin: Vec3, dir: Vec3, t_min: f64) -> Option<Hit> {
        let (t0, t1) = sphere_interval(origin, dir, self.bounding_radius() * (1.0 + 1e-9))?;
        if t1 <= t_min {
            return None;
        }
        match *self {
            Primitive::Sphere { radius } => intersect_sphere(origin, dir, radius, t_min),
            Primitive::Cube { half_edge } => intersect_cube(origin, dir, half_edge, t_min),
            Primitive::Cone { apex, base, slope } => intersect_cone(origin, dir, apex, base, slope, t_min),
            Primitive::Torus { ring, tube } => intersect_torus(origin, dir, ring, tube, t0.max(t_min), t1),
        }
    }

    /// Signed distance for the torus, implicit-function sign for the others.
    /// Negative inside, positive outside.
    pub fn inside_outside(&self, p: Vec3) -> f64 {
        match *self {
            Primitive::Sphere { radius } => p.norm() - radius,
            Primitive::Cube { half_edge } => p.x.abs().max(p.y.abs()).max(p.z.abs()) - half_edge,
            Primitive::Cone { apex, base, slope } => {
                let rho = (p.x * p.x + p.z * p.z).sqrt();
                (rho - slope * (apex - p.y)).max(base - p.y).max(p.y - apex)
            }
            Primitive::Torus { ring, tube } => torus_sdf(p, ring, tube),
        }
    }
}

fn sphere_interval(o: Vec3, d: Vec3, r: f64) -> Option<(f64, f64)> {
    let a = d.dot(d);
    let b = o.dot(d);
    let c = o.dot(o) - r * r;
    let disc = b * b - a * c;
    if disc < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    Some(((-b - s) / a, (-b + s) / a))
}

fn intersect_sphere(o: Vec3, d: Vec3, r: f64, t_min: f64) -> Option<Hit> {
    let (t0, t1) = sphere_interval(o, d, r)?;
    let t = if t0 > t_min {
        t0
    } else if t1 > t_min {
        t1
    } else {
        return None;
    };
    Some(Hit {
        t,
        normal: (o + d * t).normalized(),
    })
}

fn intersect_cube(o: Vec3, d: Vec3, h: f64, t_min: f64) -> Option<Hit> {
    let mut t_near = f64::NEG_INFINITY;
    let mut t_far = f64::INFINITY;
    let mut near_axis = 0;
    let oc = [o.x, o.y, o.z];
    let dc = [d.x, d.y, d.z];
    for axis in 0..3 {
        if dc[axis] == 0.0 {
            if oc[axis].abs() > h {
                return None;
            }
            continue;
        }
        let inv = 1.0 / dc[axis];
        let mut ta = (-h - oc[axis]) * inv;
        let mut tb = (h - oc[axis]) * inv;
        if ta > tb {
            std::mem::swap(&mut ta, &mut tb);
        }
        if ta > t_near {
            t_near = ta;
            near_axis = axis;
        }
        t_far = t_far.min(tb);
    }
    if t_near > t_far || t_near <= t_min {
        return None;
    }
    let mut n = [0.0; 3];
    n[near_axis] = -dc[near_axis].signum();
    Some(Hit {
        t: t_near,
        normal: Vec3::new(n[0], n[1], n[2]),
    })
}

fn intersect_cone(o: Vec3, d: Vec3, apex: f64, base: f64, k: f64, t_min: f64) -> Option<Hit> {
    let mut best: Option<Hit> = None;
    let mut offer = |t: f64, normal: Vec3| {
        if t > t_min && best.is_none_or(|b| t < b.t) {
            best = Some(Hit { t, normal });
        }
    };

    // Lateral surface: x² + z² = k²(apex − y)².
    let k2 = k * k;
    let w = apex - o.y;
    let a = d.x * d.x + d.z * d.z - k2 * d.y * d.y;
    let b = 2.0 * (o.x * d.x + o.z * d.z + k2 * w * d.y);
    let c = o.x * o.x + o.z * o.z - k2 * w * w;
    let mut roots = [f64::NAN; 2];
    if a.abs() > 1e-300 {
        let disc = b * b - 4.0 * a * c;
        if disc >= 0.0 {
            let s = disc.sqrt();
            // Numerically stable pair.
            let q = -0.5 * (b + b.signum() * s);
            roots = [q / a, c / q];
        }
    } else if b != 0.0 {
        roots[0] = -c / b;
    }
    for t in roots {
        if !t.is_finite() {
            continue;
        }
        let p = o + d * t;
        if p.y >= base && p.y <= apex {
            let n = Vec3::new(p.x, k2 * (apex - p.y), p.z);
            if n.norm() > 0.0 {
                offer(t, n.normalized());
            }
        }
    }

    // Base disk.
    if d.y != 0.0 {
        let t = (base - o.y) / d.y;
        let p = o + d * t;
        let rim = k * (apex - base);
        if p.x * p.x + p.z * p.z <= rim * rim {
            offer(t, Vec3::new(0.0, -1.0, 0.0));
        }
    }
    best
}

fn torus_sdf(p: Vec3, ring: f64, tube: f64) -> f64 {
    let q = (p.x * p.x + p.y * p.y).sqrt() - ring;
    (q * q + p.z * p.z).sqrt() - tube
}

fn torus_normal(p: Vec3, ring: f64) -> Vec3 {
    let rho = (p.x * p.x + p.y * p.y).sqrt();
    if rho == 0.0 {
        return p.normalized();
    }
    let c = Vec3::new(p.x * ring / rho, p.y * ring / rho, 0.0);
    (p - c).normalized()
}

/// Sphere tracing on the exact signed distance brackets the first crossing,
/// bisection then narrows it below [`TORUS_TOLERANCE`].
fn intersect_torus(o: Vec3, d: Vec3, ring: f64, tube: f64, t_start: f64, t_end: f64) -> Option<Hit> {
    let speed = d.norm();
    let sdf = |t: f64| torus_sdf(o + d * t, ring, tube);
    let mut lo = t_start;
    if sdf(lo) <= 0.0 {
        // Origin inside the tube; the renderer never places a camera there.
        return None;
    }
    let min_step = TORUS_MIN_STEP / speed;
    let mut hi = None;
    for _ in 0..TORUS_MAX_STEPS {
        let s = sdf(lo);
        let next = lo + (s / speed).max(min_step);
        if next > t_end {
            if sdf(t_end) <= 0.0 {
                hi = Some(t_end);
            }
            break;
        }
        if sdf(next) <= 0.0 {
            hi = Some(next);
            break;
        }
        lo = next;
    }
    let mut hi = hi?;
    let tol = TORUS_TOLERANCE / speed;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if sdf(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    Some(Hit {
        t,
        normal: torus_normal(o + d * t, ring),
    })
}
