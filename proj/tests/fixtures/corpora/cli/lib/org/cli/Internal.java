package org.cli;

class Internal {
    public static void helper() {}
}
