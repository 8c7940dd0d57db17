"""Closed-form coefficients of the first-level normal form for quadratic f.

f = a1 x1 + a2 y1 + a3 x2 + a4 y2 + a5 x1^2 + a6 x1 y1 + a7 x1 x2 + a8 x1 y2
    + a9 y1^2 + a10 y1 x2 + a11 y1 y2 + a12 x2^2 + a13 x2 y2 + a14 y2^2.

REFERENCE holds the reference expressions used by the literal checks.  Two
entries disagree with the computed coefficients: b_{0,3} with denominators
64 (the mirror image of b_{3,0} has 16) and the mixed pair b_{2,1}, b_{1,2}.
CORRECTED has b_{0,3} with the mirror-image denominators.
"""

QUADRATIC_F = ("a1*x1 + a2*y1 + a3*x2 + a4*y2 + a5*x1^2 + a6*x1*y1 + a7*x1*x2 + a8*x1*y2"
               " + a9*y1^2 + a10*y1*x2 + a11*y1*y2 + a12*x2^2 + a13*x2*y2 + a14*y2^2")

REFERENCE = {
    (1, 0): "(a5 + a9)/2",
    (0, 1): "(a12 + a14)/2",
    (1, 1): ("(a11*a1*a3 - a10*a4*a1 - a8*a3*a2 + a7*a4*a2)/(2*omega1*omega2)"
             " + (a3^2 + a4^2)*(a5 + a9)/(4*omega2^2) + (a1^2 + a2^2)*(a12 + a14)/(4*omega1^2)"),
    (2, 0): "(a5*a1^2 + 3*a5*a2^2 - 2*a6*a1*a2 + 3*a9*a1^2 + a9*a2^2)/(8*omega1^2)",
    (0, 2): "(a12*a3^2 + 3*a12*a4^2 - 2*a13*a3*a4 + 3*a14*a3^2 + a14*a4^2)/(8*omega2^2)",
    (3, 0): "(a5+a9)*(a1^2*a6-2*a1*a2*a5+2*a1*a2*a9-a2^2*a6)/(16*omega1^3)+(a1^2+a2^2)*(a1^2*a5+5*a1^2*a9-4*a1*a2*a6+5*a2^2*a5+a2^2*a9)/(16*omega1^4)",
    (0, 3): "(a12+a14)*(a3^2*a13-2*a3*a4*a12+2*a3*a4*a14-a4^2*a13)/(64*omega2^3)+(a3^2*a12+5*a3^2*a14-4*a3*a4*a13+5*a4^2*a12+a4^2*a14)*(a3^2+a4^2)/(64*omega2^4)",
    (2, 1): """3*( a1^2*(a5+3*a9)-2*a1*a2*a6+a2^2*(3*a5+a9) )*(a3^2+a4^2)/(8*omega2^2*(omega1^2-omega2^2))
+ ( a1*a3*a11-a1*a4*a10-a2*a3*a8+a2*a4*a7)*(a1^2+a2^2)/(4*omega1*omega2*(omega1^2-omega2^2)) - 3*(a1^2+a2^2)^2*(a12+a14)*omega2^2/(16*omega1^4*(omega1^2-omega2^2))
+ (3*(a12+a14)*(a1^2+a2^2)^2-6*(a3^2+a4^2)*(a1^2*a5+3*a1^2*a9-2*a1*a2*a6+3*a2^2*a5+a2^2*a9))/(16*omega1^2*(omega1^2-omega2^2))
- (a1*a3*a11-a1*a4*a10-a2*a3*a8+a2*a4*a7)*omega2*(a1^2+a2^2)/(4*omega1^3*(omega1^2-omega2^2))
+ ((a3*a8-a4*a7)*(3*a1*a5+5*a1*a9-a2*a6) - (a3*a11-a4*a10)*(a1*a6-5*a2*a5-3*a2*a9))/(8*omega2*omega1^3*(omega1^2-omega2^2))
- (a12+a14)*(a1^2*a6-2*a1*a2*a5+2*a1*a2*a9-a2^2*a6)*omega2^2/(16*omega1^3*(omega1^2-omega2^2))
+ (a1^2*a6-2*a1*a2*a5+2*a1*a2*a9-a2^2*a6)*(a12+a14)/(16*omega1*(omega1^2-omega2^2))
- (a1*a2*(a7^2+a8^2-a10^2-a11^2) - (a1^2-a2^2)*(a10*a7+a8*a11))/(4*omega1*(omega1^2-omega2^2))
+ (a1*a5+3*a1*a9-a2*a6)*(a3*a10+a4*a11)/(omega1*4*(omega1^2-omega2^2))
- (a3*a7+a4*a8)*(a1*a6-3*a2*a5-a2*a9)/(4*omega1*(omega1^2-omega2^2))
- ((a1*a3*a8-a1*a4*a7-a2*a3*a11+a2*a4*a10) + a3*a6*(a1*a11+a2*a8) - a4*a6*(a1*a10+a2*a7))*omega2*(a5-a9)/(8*omega1^2*(omega1^2-omega2^2))""",
    (1, 2): """3*(a3^2+a4^2)^2*(a9+a5)*omega1^2/(16*omega2^4*(omega1^2-omega2^2)) - (a13*(a4^2-a3^2)+2*a4*a3*(a12-a14))*omega1^2*(a9+a5)/(16*omega2^3*(omega1^2-omega2^2))
- 3*((a2*a8-a1*a11)*a3+a4*(a1*a10-a2*a7))*omega1*(a3^2+a4^2)/(4*omega2^3*(omega1^2-omega2^2))
+ ((a12-a14)*(a1*a3*a10-a1*a4*a11-a2*a3*a7+a2*a4*a8) + a3*a13*(a1*a11-a2*a8)+a4*a13*(a1*a10-a2*a7))*omega1/(8*omega2^2*(omega1^2-omega2^2))
- 3*a4^2*(2*a3^2-a4^2)*(a9+a5)/(16*omega2^2*(omega1^2-omega2^2))
+ (a1^2+a2^2)*(3*a3^2*a12+9*a3^2*a14+6*a13*a4*a3-3*a4^2*a12-a4^2*a14)/(8*omega2^2*(omega1^2-omega2^2))
- (3*a3^2*a12+9*a3^2*a14-6*a13*a4*a3+9*a4^2*a12+3*a4^2*a14)*(a1^2+a2^2)/(8*omega1^2*(omega1^2-omega2^2))
- ((a3^2-a4^2)*(a7*a8+a10*a11) + (-a7^2+a8^2-a10^2+a11^2)*a4*a3 - a13*a3*(a1*a7+a2*a10) + (8*a3*a12+a13*a4)*(a1*a8+a2*a11))/(4*omega2*(omega1^2-omega2^2))
+ (2*a13*(a1*a3*a11+a1*a4*a10-a2*a3*a8-a2*a4*a7) - 2*a4*(5*a12+3*a14)*(a1*a11-a2*a8))/(16*omega1*(omega1^2-omega2^2))
- a3*(3*a12+5*a14)*(a1*a10-a2*a7)/(8*omega1*(omega1^2-omega2^2))
+ 3*((-a1*a11+a2*a8)*a3+a4*(a1*a10-a2*a7))*(a3^2+a4^2)/(4*omega1*omega2*(omega1^2-omega2^2))""",
}

CORRECTED = dict(REFERENCE)
CORRECTED[(0, 3)] = "(a12+a14)*(a3^2*a13-2*a3*a4*a12+2*a3*a4*a14-a4^2*a13)/(16*omega2^3)+(a3^2*a12+5*a3^2*a14-4*a3*a4*a13+5*a4^2*a12+a4^2*a14)*(a3^2+a4^2)/(16*omega2^4)"
