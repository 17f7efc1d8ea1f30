// Closed-form theoretical boundary curves drawn over the data.  These are
// computed from the formulas alone, never fitted to the CSVs.

/** Exact-recovery noise threshold for sign synchronization: sqrt(n / (2 ln n)). */
export function z2Boundary(n: number): number {
  return Math.sqrt(n / (2 * Math.log(n)));
}

/** Upper branch of the bisection recovery boundary: sqrt(a) - sqrt(b) = +sqrt(2). */
export function sbmBoundaryUpper(b: number): number {
  return (Math.sqrt(b) + Math.SQRT2) ** 2;
}

/** Lower branch: sqrt(a) - sqrt(b) = -sqrt(2) (only exists for b >= 2). */
export function sbmBoundaryLower(b: number): number | null {
  const root = Math.sqrt(b) - Math.SQRT2;
  return root >= 0 ? root ** 2 : null;
}

/** Predicted log(mean misclassification rate)/log n:  -(sqrt a - sqrt b)^2 / 2. */
export function misclTheory(a: number, b: number): number {
  return -((Math.sqrt(a) - Math.sqrt(b)) ** 2) / 2;
}
