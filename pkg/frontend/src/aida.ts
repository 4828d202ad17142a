/**
 * Client-side mirror of the server's AIDA surface validation, down to the
 * violation strings, so field errors can be shown before a request is made
 * and match what the server would say.
 */

function isUpperLetter(ch: string): boolean {
  return ch.toLowerCase() !== ch.toUpperCase() && ch === ch.toUpperCase();
}

function isDigit(ch: string): boolean {
  return /\p{Nd}/u.test(ch);
}

export function validateAida(text: string): string[] {
  const violations: string[] = [];
  if (!text) {
    violations.push("sentence is empty");
  }
  if (!text.endsWith(".") || text.endsWith("..")) {
    violations.push("sentence must end with exactly one '.'");
  }
  const first = text.charAt(0);
  if (!text || !(isUpperLetter(first) || isDigit(first))) {
    violations.push("sentence must start with an uppercase letter or digit");
  }
  if (text.includes("\n") || text.includes("\r")) {
    violations.push("sentence must not contain line breaks");
  }
  return violations;
}

export function isValidAida(text: string): boolean {
  return validateAida(text).length === 0;
}
